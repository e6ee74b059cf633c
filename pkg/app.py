import os
import logging
from dotenv import load_dotenv
from flask import Flask, request, jsonify

load_dotenv()
logging.basicConfig(level=os.getenv('LOG_LEVEL', 'INFO').upper(), format='%(asctime)s %(levelname)s: %(message)s')

import reports
from approximation import APPROXIMATION_DEFAULTS
from errors import PeriodicPointsError, SchemaError
from spec_io import parse_spec_file, parse_vector
from truncation_oracle import ORACLE_DEFAULTS
from utils import log_function_call, require_positive_integer

app = Flask(__name__)

# Užklausos laukai, kurie nėra SpecFile dalis
REQUEST_PARAMETERS = {
    'period': {'vector', 'M'},
    'approximate': {'level', 'probe', 'n_max', 'allow_probe_limited'},
    'oracle': {'d', 'max_m', 'tol', 'seed'},
}


def error_status(e: PeriodicPointsError) -> int:
    """HTTP statusas pagal klaidos grąžinimo kodą."""
    if e.exit_code == 2:
        return 400
    if e.exit_code in (3, 4):
        return 422
    return 500


def split_request_body(route: str):
    """
    Atskiria užklausos parametrus nuo SpecFile laukų.

    Returns:
        tuple: (SpecFile, parametrų žodynas)
    """
    body = request.get_json(silent=True)
    if not isinstance(body, dict):
        raise SchemaError("Užklausos turinys turi būti JSON objektas")
    names = REQUEST_PARAMETERS.get(route, set())
    params = {k: body[k] for k in names if k in body}
    spec_data = {k: v for k, v in body.items() if k not in names}
    return parse_spec_file(spec_data), params


def _optional_positive(params: dict, name: str, default=None):
    if params.get(name) is None:
        return default
    return require_positive_integer(params[name], name)


@app.route('/classify', methods=['POST'])
def classify_route():
    """Klasifikuoja P(T) pagal užklausoje pateiktą spec failą."""
    try:
        spec_file, _ = split_request_body('classify')
        return jsonify(reports.classify_report(spec_file))
    except PeriodicPointsError as e:
        logging.warning("Klasifikavimo klaida: %s", e)
        return jsonify({'error': str(e)}), error_status(e)
    except Exception as e:
        logging.error("Netikėta klaida /classify: %s", e, exc_info=True)
        return jsonify({'error': str(e)}), 500


@app.route('/period', methods=['POST'])
def period_route():
    try:
        spec_file, params = split_request_body('period')
        vectors = [parse_vector(params['vector'])] if 'vector' in params else list(spec_file.vectors)
        report = reports.period_report(spec_file, vectors, _optional_positive(params, 'M'))
        return jsonify(report)
    except PeriodicPointsError as e:
        logging.warning("Periodo klaida: %s", e)
        return jsonify({'error': str(e)}), error_status(e)
    except Exception as e:
        logging.error("Netikėta klaida /period: %s", e, exc_info=True)
        return jsonify({'error': str(e)}), 500


@app.route('/approximate', methods=['POST'])
def approximate_route():
    try:
        spec_file, params = split_request_body('approximate')
        level = _optional_positive(params, 'level', APPROXIMATION_DEFAULTS['level'])
        probe = _optional_positive(params, 'probe', APPROXIMATION_DEFAULTS['probe'])
        n_max = _optional_positive(params, 'n_max')
        allow = params.get('allow_probe_limited', True)
        if not isinstance(allow, bool):
            raise SchemaError("allow_probe_limited turi būti true arba false")
        log_function_call("approximate_route", level=level, probe=probe, n_max=n_max)
        return jsonify(reports.approximation_report(spec_file, level, probe, n_max, allow))
    except PeriodicPointsError as e:
        logging.warning("Aproksimacijos klaida: %s", e)
        return jsonify({'error': str(e)}), error_status(e)
    except Exception as e:
        logging.error("Netikėta klaida /approximate: %s", e, exc_info=True)
        return jsonify({'error': str(e)}), 500


@app.route('/oracle', methods=['POST'])
def oracle_route():
    """Paleidžia orakulo patikras. Parametrų prioritetas: užklausa, failo 'oracle' blokas, aplinka."""
    try:
        spec_file, params = split_request_body('oracle')
        config = dict(ORACLE_DEFAULTS)
        config.update(spec_file.oracle)
        for name in ('d', 'max_m'):
            if params.get(name) is not None:
                config[name] = require_positive_integer(params[name], name)
        if params.get('seed') is not None:
            seed = params['seed']
            if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
                raise SchemaError("seed turi būti neneigiamas sveikasis skaičius")
            config['seed'] = seed
        if params.get('tol') is not None:
            tol = params['tol']
            if isinstance(tol, bool) or not isinstance(tol, (int, float)) or tol <= 0:
                raise SchemaError("tol turi būti teigiamas skaičius")
            config['tol'] = float(tol)
        report = reports.oracle_report(spec_file, config['d'], config['max_m'], config['tol'], config['seed'])
        return jsonify(report)
    except PeriodicPointsError as e:
        logging.warning("Orakulo klaida: %s", e)
        return jsonify({'error': str(e)}), error_status(e)
    except Exception as e:
        logging.error("Netikėta klaida /oracle: %s", e, exc_info=True)
        return jsonify({'error': str(e)}), 500


@app.route('/examples', methods=['GET'])
def examples_route():
    return jsonify(reports.cmd_examples())


@app.route('/examples/<name>', methods=['GET'])
def example_route(name):
    try:
        return jsonify(reports.cmd_examples(name))
    except PeriodicPointsError as e:
        return jsonify({'error': str(e)}), 404
    except Exception as e:
        logging.error("Netikėta klaida /examples/%s: %s", name, e, exc_info=True)
        return jsonify({'error': str(e)}), 500


if __name__ == '__main__':
    app.run(debug=os.getenv('FLASK_DEBUG', '0') == '1',
            host=os.getenv('FLASK_HOST', '127.0.0.1'),
            port=int(os.getenv('FLASK_PORT', '5000')))
