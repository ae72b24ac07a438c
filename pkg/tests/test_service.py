from mgalg.cli import _InProcessClient
from mgalg.service import app

client = _InProcessClient(app)


def test_health_and_config():
    r = client.get('/health')
    assert r.status_code == 200 and r.json()['ok']
    r = client.get('/config')
    body = r.json()
    assert body['free_rank_cap'] == 2
    assert body['parallelism'] >= 1


def test_chain_endpoint():
    r = client.post('/chain', json={'coords': '2,0,1'})
    assert r.status_code == 200
    body = r.json()
    assert body['coords'] == '(2,(0,1))'
    assert body['size'] == 4
    assert body['algebra']['exists_image'] == [0, 1, 3]
    bad = client.post('/chain', json={'coords': '2,9'})
    assert bad.status_code == 400
    assert bad.json()['error'] == 'invalid_coordinates'


def test_check_endpoint():
    chain = client.post('/chain', json={'coords': '2,0,1'}).json()['algebra']
    holds = client.post('/check', json={'algebra': chain, 'name': 'M3'})
    assert holds.status_code == 200 and holds.json()['holds']
    fails = client.post('/check', json={'algebra': chain,
                                        'identity': 'Ax = x'})
    body = fails.json()
    assert not body['holds']
    assert body['counterexample'] == {'x': 'a2'}


def test_classify_endpoint():
    chain = client.post('/chain', json={'coords': '1,0,0'}).json()['algebra']
    body = client.post('/classify', json={'algebra': chain,
                                          'max_param': 4}).json()
    assert body['fsi'] and body['si'] and not body['simple']
    assert body['width'] == 1
    assert body['heights'] == {'H': 3, 'HE': 3}
    assert 'W_1' in body['memberships']


def test_dual_and_space_endpoints():
    chain = client.post('/chain', json={'coords': '2,1,0'}).json()['algebra']
    space = client.post('/dual', json={'algebra': chain}).json()['space']
    report = client.post('/space/validate', json={'space': space}).json()
    assert report['ok'] and not report['partial']
    back = client.post('/space/algebra', json={'space': space}).json()
    assert back['algebra']['size'] == 4
    broken = {'size': 3, 'leq': [[0, 1]], 'classes': [[0, 2], [1]]}
    report = client.post('/space/validate', json={'space': broken}).json()
    assert not report['ok']
    assert report['violations']


def test_glivenko_endpoint():
    chain = client.post('/chain', json={'coords': '2,0,1'}).json()['algebra']
    body = client.post('/glivenko', json={'algebra': chain}).json()
    assert body['regular'] == ['a0', 'a3']
    assert body['dense'] == ['a1', 'a2', 'a3']
    assert body['kernel'] == ['a1', 'a2', 'a3']
    assert body['map']['a1'] == 'a3'
    assert body['isomorphic_to_quotient'] and body['semisimple']


def test_free_endpoint_and_gate():
    body = client.post('/free', json={'n': 1, 'counts': True}).json()
    assert body['exists_pi'] == 7
    assert body['pi'] == 9
    assert body['algebra'] == 72
    assert body['counts']['free_size'] == 72
    assert body['counts']['stirling_ok']
    gated = client.post('/free', json={'n': 3})
    assert gated.status_code == 400
    assert gated.json()['error'] == 'bound_exceeded'


def test_enumerate_endpoint():
    body = client.post('/enumerate', json={'max_size': 5}).json()
    assert body['count'] == 20


def test_verify_endpoint():
    body = client.post('/verify', json={'suite': 'witness'}).json()
    assert body['ok']
    assert 'PASS' in body['text']
    missing = client.post('/verify', json={'suite': 'nosuch'})
    assert missing.status_code == 400
    assert missing.json()['error'] == 'unknown_name'


def test_dot_endpoint():
    chain = client.post('/chain', json={'coords': '1,1'}).json()['algebra']
    body = client.post('/dot', json={'algebra': chain}).json()
    assert body['dot'].startswith('digraph')
    space = client.post('/dual', json={'algebra': chain}).json()['space']
    body = client.post('/dot', json={'space': space}).json()
    assert 'cluster_0' in body['dot']
    both = client.post('/dot', json={'algebra': chain, 'space': space})
    assert both.status_code == 400
