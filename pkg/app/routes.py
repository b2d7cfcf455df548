"""
=============================================================================
FLASK ROUTES - Nefwall JSON API
=============================================================================

Read-only JSON endpoints over the same commands as the CLI. Every success
answers {"success": true, ...payload} with the payload the CLI prints for
--format json; every library error answers {"success": false, "error": msg}
with the status its class declares.

ENDPOINTS:
==========
- GET /api/walls?n=&chi=&t_min=&first=&assume_shgh=
- GET /api/classify?n=&chi=&depth=&assume_nagata=
- GET /api/snapshot?n=&chi=&t=&assume_shgh=
- GET /api/components?n=&chi=&k=&r=&assume_shgh=
- GET /api/convergents?n=&count=
- GET /api/pell?n=&N=&limit=
- GET /api/cohomology?n=&d=&m=&assume_shgh=
=============================================================================
"""

import logging
import os
import sys

from flask import Blueprint, jsonify, request

# Add parent directory to path so the local packages import
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import cli
from app.params import parse_bool, parse_int, parse_positive_int
from errors import ArgumentError, NefwallError
from lattice.picard import Surface

logger = logging.getLogger(__name__)

main = Blueprint('main', __name__)


def _arg(name: str, required: bool = True):
    value = request.args.get(name)
    if required and (value is None or value == ""):
        raise ArgumentError(f"missing query parameter {name!r}")
    return value


def _optional_int(name: str):
    value = request.args.get(name)
    return None if value in (None, "") else parse_int(value, name)


def _surface() -> Surface:
    return Surface(
        parse_int(_arg('n'), 'n'),
        assume_shgh=parse_bool(request.args.get('assume_shgh')),
        assume_nagata=parse_bool(request.args.get('assume_nagata')),
    )


def _ok(report):
    return jsonify({'success': True, **report.payload})


@main.errorhandler(NefwallError)
def handle_error(e: NefwallError):
    logger.info("%s: %s", type(e).__name__, e)
    return jsonify({'success': False, 'error': str(e)}), e.http_status


@main.route('/api/walls')
def api_walls():
    """Wall-crossing timeline; first=K or t_min (exact rational or auto:K)"""
    first = request.args.get('first')
    t_min = request.args.get('t_min')
    if first and t_min:
        raise ArgumentError("pass either first or t_min, not both")
    if first:
        t_min = f"auto:{parse_positive_int(first, 'first')}"
    return _ok(cli.cmd_walls(_surface(), _optional_int('chi'), t_min))


@main.route('/api/classify')
def api_classify():
    chi_target = _optional_int('chi')
    depth = _optional_int('depth')
    return _ok(cli.cmd_classify(
        _surface(),
        1 if chi_target is None else chi_target,
        cli.DEFAULT_DEPTH if depth is None else depth,
    ))


@main.route('/api/snapshot')
def api_snapshot():
    return _ok(cli.cmd_snapshot(_surface(), _optional_int('chi'), _arg('t')))


@main.route('/api/components')
def api_components():
    chi_value = _optional_int('chi')
    return _ok(cli.cmd_components(
        _surface(),
        2 if chi_value is None else chi_value,
        parse_int(_arg('k'), 'k'),
        parse_int(_arg('r'), 'r'),
    ))


@main.route('/api/convergents')
def api_convergents():
    count = _optional_int('count')
    return _ok(cli.cmd_convergents(
        parse_int(_arg('n'), 'n'),
        cli.DEFAULT_CONVERGENTS if count is None else count,
    ))


@main.route('/api/pell')
def api_pell():
    limit = _optional_int('limit')
    return _ok(cli.cmd_pell(
        parse_int(_arg('n'), 'n'),
        parse_int(_arg('N'), 'N'),
        5 if limit is None else limit,
    ))


@main.route('/api/cohomology')
def api_cohomology():
    return _ok(cli.cmd_cohomology(_surface(), parse_int(_arg('d'), 'd'), _arg('m')))
