'''Command line client for the service; runs in process unless pointed at a server.

Exit codes: 0 on success, 1 when a verification came back negative, 2 on
usage errors or malformed input.
'''

import json
import sys

import click
import httpx

from . import serialize


class _InProcessClient:
    '''Synchronous facade over the ASGI app, no socket involved.'''

    def __init__(self, app):
        self._app = app

    def _request(self, method, path, payload):
        import asyncio

        async def go():
            transport = httpx.ASGITransport(app=self._app)
            async with httpx.AsyncClient(transport=transport,
                                         base_url='http://mgalg') as client:
                return await client.request(method, path, json=payload)

        return asyncio.run(go())

    def get(self, path):
        return self._request('GET', path, None)

    def post(self, path, json=None):
        return self._request('POST', path, json)


def _client(server):
    if server:
        return httpx.Client(base_url=server.rstrip('/'), timeout=600.0)
    from .service import app
    return _InProcessClient(app)


def _call(ctx, method, path, payload=None):
    client = _client(ctx.obj)
    try:
        if method == 'get':
            resp = client.get(path)
        else:
            resp = client.post(path, json=payload)
    except httpx.HTTPError as exc:
        click.echo(f'error: cannot reach server: {exc}', err=True)
        sys.exit(2)
    if resp.status_code == 400:
        body = resp.json()
        click.echo(f'error [{body.get("error")}]: {body.get("message")}',
                   err=True)
        details = body.get('details') or {}
        for key in sorted(details):
            click.echo(f'  {key}: {details[key]}', err=True)
        sys.exit(2)
    if resp.status_code != 200:
        click.echo(f'error: server returned {resp.status_code}', err=True)
        sys.exit(2)
    return resp.json()


def _load_doc(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        click.echo(f'error: {exc}', err=True)
        sys.exit(2)
    except json.JSONDecodeError as exc:
        click.echo(f'error: {path} is not valid JSON: {exc}', err=True)
        sys.exit(2)


def _write(path, text):
    with open(path, 'w') as fh:
        fh.write(text)
    click.echo(f'wrote {path}')


@click.group()
@click.option('--server', envvar='MG_SERVER_URL', default=None,
              help='Base URL of a running service; defaults to in-process.')
@click.pass_context
def main(ctx, server):
    '''Finite monadic Goedel algebra toolkit.'''
    ctx.obj = server


@main.command()
@click.option('--coords', required=True,
              help='Coordinates, e.g. 2,1,0 (first number is the level).')
@click.option('--out', type=click.Path(), default=None,
              help='Write the chain algebra as JSON.')
@click.pass_context
def chain(ctx, coords, out):
    '''Build the chain with the given coordinates.'''
    body = _call(ctx, 'post', '/chain', {'coords': coords})
    click.echo(f'coords {body["coords"]}  size {body["size"]}')
    if out:
        _write(out, serialize.dumps(body['algebra']))


@main.command()
@click.option('--algebra', 'algebra_path', required=True, type=click.Path())
@click.option('--identity', default=None, help='Identity text, e.g. "A(x|y) = Ax | Ay".')
@click.option('--name', default=None, help='Catalog name, e.g. M2, law7, alpha.')
@click.option('--param', type=int, default=None, help='Parameter for alpha/H/HE.')
@click.pass_context
def check(ctx, algebra_path, identity, name, param):
    '''Check an identity on an algebra; exits 1 with a counterexample if it fails.'''
    payload = {'algebra': _load_doc(algebra_path), 'identity': identity,
               'name': name, 'param': param}
    body = _call(ctx, 'post', '/check', payload)
    if body['holds']:
        click.echo(f'holds: {body["identity"]}')
        return
    click.echo(f'fails: {body["identity"]}')
    for var, label in sorted(body['counterexample'].items()):
        click.echo(f'  {var} = {label}')
    sys.exit(1)


@main.command()
@click.option('--algebra', 'algebra_path', required=True, type=click.Path())
@click.option('--max-param', type=int, default=4, show_default=True)
@click.pass_context
def classify(ctx, algebra_path, max_param):
    '''Print structure flags, width, heights, and variety memberships.'''
    payload = {'algebra': _load_doc(algebra_path), 'max_param': max_param}
    body = _call(ctx, 'post', '/classify', payload)
    click.echo(f'fsi={body["fsi"]} si={body["si"]} simple={body["simple"]}')
    if body['width'] is not None:
        click.echo(f'width={body["width"]} '
                   f'orthogonal={",".join(body["orthogonal_set"])}')
    click.echo(f'heights (nH, nHE)=({body["heights"]["H"]}, '
               f'{body["heights"]["HE"]})')
    click.echo(f'discriminator={body["discriminator"]}')
    members = [tag for tag, holds in body['memberships'].items() if holds]
    click.echo('member of: ' + (', '.join(members) if members else 'none'))


@main.command()
@click.option('--algebra', 'algebra_path', required=True, type=click.Path())
@click.option('--out', type=click.Path(), default=None,
              help='Write the dual space as JSON.')
@click.option('--dot', 'dot_path', type=click.Path(), default=None,
              help='Write a Hasse diagram in DOT format.')
@click.pass_context
def dual(ctx, algebra_path, out, dot_path):
    '''Compute the dual space of an algebra.'''
    body = _call(ctx, 'post', '/dual', {'algebra': _load_doc(algebra_path)})
    space = body['space']
    click.echo(f'space with {space["size"]} points, '
               f'{len(space["classes"])} classes')
    if out:
        _write(out, serialize.dumps(space))
    if dot_path:
        dot_body = _call(ctx, 'post', '/dot', {'space': space})
        _write(dot_path, dot_body['dot'])


@main.command()
@click.option('--validate', 'validate_path', required=True, type=click.Path())
@click.option('--to-algebra', 'algebra_out', type=click.Path(), default=None,
              help='Also write the algebra of increasing sets.')
@click.pass_context
def space(ctx, validate_path, algebra_out):
    '''Validate a space document; exits 1 when the axioms fail.'''
    doc = _load_doc(validate_path)
    body = _call(ctx, 'post', '/space/validate', {'space': doc})
    status = 'valid' if body['ok'] else 'invalid'
    suffix = ' (subset scan truncated)' if body['partial'] else ''
    click.echo(f'{status}: {body["checked_sets"]} increasing sets checked'
               + suffix)
    for violation in body['violations']:
        click.echo(f'  violated: {" ".join(violation)}')
    if not body['ok']:
        sys.exit(1)
    if algebra_out:
        alg = _call(ctx, 'post', '/space/algebra', {'space': doc})
        _write(algebra_out, serialize.dumps(alg['algebra']))


@main.command()
@click.option('--algebra', 'algebra_path', required=True, type=click.Path())
@click.option('--out', type=click.Path(), default=None,
              help='Write the collapse algebra as JSON.')
@click.pass_context
def glivenko(ctx, algebra_path, out):
    '''Collapse onto the regular part and report the verified isomorphism.'''
    body = _call(ctx, 'post', '/glivenko',
                 {'algebra': _load_doc(algebra_path)})
    click.echo('regular: ' + ', '.join(body['regular']))
    click.echo('dense: ' + ', '.join(body['dense']))
    click.echo('kernel: ' + ', '.join(body['kernel']))
    click.echo('map: ' + ', '.join(f'{a}->{b}'
                                   for a, b in sorted(body['map'].items())))
    click.echo(f'quotient isomorphism verified: '
               f'{body["isomorphic_to_quotient"]}, '
               f'semisimple: {body["semisimple"]}')
    if out:
        _write(out, serialize.dumps(body['collapse']))


@main.command()
@click.option('--n', required=True, type=int)
@click.option('--out', type=click.Path(), default=None,
              help='Write the prime space as JSON.')
@click.option('--dot', 'dot_path', type=click.Path(), default=None,
              help='Write the prime forest in DOT format.')
@click.option('--counts', is_flag=True, help='Print the count report.')
@click.pass_context
def free(ctx, n, out, dot_path, counts):
    '''Build the rank-n free algebra presentation.'''
    body = _call(ctx, 'post', '/free', {'n': n, 'counts': counts})
    click.echo(f'existsPi={body["exists_pi"]}, pi={body["pi"]}, '
               f'algebra={body["algebra"]}')
    if counts:
        rep = body['counts']
        click.echo(f'minimal nodes: {rep["min_count"]} by level '
                   f'{rep["min_by_m"]} '
                   f'(formula {"agrees" if rep["stirling_ok"] else "differs"})')
        click.echo(f'maximality criterion: '
                   f'{"agrees" if rep["maximality_ok"] else "differs"}')
        claim = rep['product_claim']
        click.echo(f'simple-collapse product ({claim["method"]}): '
                   f'{"full" if claim["full"] else "proper"} on '
                   f'{len(claim["factors"])} factors')
    if out:
        _write(out, serialize.dumps(body['space']))
    if dot_path:
        dot_body = _call(ctx, 'post', '/dot',
                         {'space': body['space'],
                          'generators': body['generators']})
        _write(dot_path, dot_body['dot'])


@main.command()
@click.option('--max-size', required=True, type=int)
@click.option('--out', type=click.Path(), default=None,
              help='Write all algebras as a JSON list.')
@click.pass_context
def enumerate(ctx, max_size, out):
    '''Count the algebras up to isomorphism up to the given size.'''
    body = _call(ctx, 'post', '/enumerate', {'max_size': max_size})
    click.echo(f'{body["count"]} algebras of size <= {max_size}')
    if out:
        _write(out, serialize.dumps(body['algebras']))


@main.command()
@click.option('--suite', default='paper', show_default=True)
@click.option('--max-size', type=int, default=None,
              help='Cap the enumerated corpus for the sized criteria.')
@click.option('--out', type=click.Path(), default=None,
              help='Write the JSON report.')
@click.pass_context
def verify(ctx, suite, max_size, out):
    '''Run a named verification suite; exits 1 on any failed criterion.'''
    body = _call(ctx, 'post', '/verify',
                 {'suite': suite, 'max_size': max_size})
    click.echo(body['text'], nl=False)
    if out:
        _write(out, serialize.dumps(
            {'ok': body['ok'], 'results': body['results']}))
    if not body['ok']:
        sys.exit(1)


@main.command()
@click.option('--algebra', 'algebra_path', type=click.Path(), default=None)
@click.option('--space', 'space_path', type=click.Path(), default=None)
@click.option('--out', type=click.Path(), default=None,
              help='Output path; stdout when omitted.')
@click.pass_context
def dot(ctx, algebra_path, space_path, out):
    '''Emit a DOT Hasse diagram for an algebra or space document.'''
    if (algebra_path is None) == (space_path is None):
        raise click.UsageError('pass exactly one of --algebra or --space')
    payload = {}
    if algebra_path:
        payload['algebra'] = _load_doc(algebra_path)
    else:
        payload['space'] = _load_doc(space_path)
    body = _call(ctx, 'post', '/dot', payload)
    if out:
        _write(out, body['dot'])
    else:
        click.echo(body['dot'], nl=False)


@main.command()
@click.option('--host', default='127.0.0.1', show_default=True)
@click.option('--port', default=8000, show_default=True, type=int)
def serve(host, port):
    '''Run the HTTP service.'''
    import uvicorn
    uvicorn.run('mgalg.service:app', host=host, port=port)


if __name__ == '__main__':
    main()
