import json

import jsonschema

from ..errors import FormatError

ELEMENT = {'type': 'string', 'minLength': 1}

CERTIFICATE_SCHEMA = {
    'type': 'object',
    'required': ['ring', 'a', 'b', 'trace', 'status', 'axis', 'unit', 'verified'],
    'properties': {
        'ring': {'type': 'string'},
        'a': ELEMENT,
        'b': ELEMENT,
        'trace': {
            'type': 'array',
            'items': {
                'type': 'object',
                'required': ['n', 'g_height', 'e', 'f', 'g'],
                'properties': {
                    'n': {'type': 'integer', 'minimum': 0},
                    'g_height': {'type': 'integer', 'minimum': 0},
                    'e': ELEMENT,
                    'f': ELEMENT,
                    'g': ELEMENT
                }
            }
        },
        'status': {
            'type': 'object',
            'properties': {
                'stabilized_at': {'type': 'integer', 'minimum': 0},
                'exhausted': {'type': 'integer', 'minimum': 0}
            }
        },
        'axis': ELEMENT,
        'unit': ELEMENT,
        'verified': {
            'type': 'object',
            'required': ['axis', 'unit'],
            'properties': {
                'axis': {'type': 'boolean'},
                'unit': {'type': 'boolean'}
            }
        }
    }
}

VERDICT_SCHEMA = {
    'type': 'object',
    'required': ['holds', 'cases_checked', 'mode', 'counterexample'],
    'properties': {
        'holds': {'type': 'boolean'},
        'cases_checked': {'type': 'integer', 'minimum': 0},
        'mode': {'enum': ['exhaustive', 'sampled']},
        'counterexample': {'type': ['object', 'null']}
    }
}

LAW_VERDICT_SCHEMA = {
    'type': 'object',
    'required': ['law', 'passed', 'failed', 'skipped', 'first_failure'],
    'properties': {
        'law': {'type': 'string'},
        'passed': {'type': 'integer', 'minimum': 0},
        'failed': {'type': 'integer', 'minimum': 0},
        'skipped': {'type': 'integer', 'minimum': 0},
        'first_failure': {'type': ['object', 'null']}
    }
}


def to_json(payload) -> str:
    """Byte-stable JSON: sorted keys, fixed indentation, trailing newline."""
    if hasattr(payload, 'to_dict'):
        payload = payload.to_dict()
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def validate_document(document, schema, what='document'):
    try:
        jsonschema.validate(document, schema)
    except jsonschema.ValidationError as e:
        path = '/'.join(str(p) for p in e.absolute_path) or '<root>'
        raise FormatError(f"invalid {what} at {path}: {e.message}")
    return document


def load_certificate(text: str) -> dict:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"certificate is not valid JSON: {e}")
    return validate_document(document, CERTIFICATE_SCHEMA, 'certificate')
