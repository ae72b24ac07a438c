'''HTTP facade over the library; every CLI subcommand maps to one endpoint.

Inputs arrive as the canonical JSON documents, outputs are plain dictionaries
built from the same serializers, and domain errors surface as 400 responses
carrying the error code and details.
'''

from typing import Optional

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import __version__, dot, free, glivenko, serialize, terms, varieties, verify
from .chains import ChainCoordinates, build_chain
from .config import config_from_env
from .core import classify, enumerate_algebras
from .duality import MGSpace, algebra_from_space, dual_space, validate_mg_space
from .errors import InvalidInput, MGError

app = FastAPI(title='mgalg', version=__version__)
CONFIG = config_from_env()


@app.exception_handler(MGError)
async def mg_error_handler(request, exc):
    return JSONResponse(status_code=400, content=exc.payload())


class AlgebraDoc(BaseModel):
    size: int
    leq: list
    exists_image: list
    labels: Optional[list] = None


class SpaceDoc(BaseModel):
    size: int
    leq: list
    classes: list
    labels: Optional[list] = None


class ChainRequest(BaseModel):
    coords: str


class CheckRequest(BaseModel):
    algebra: AlgebraDoc
    identity: Optional[str] = None
    name: Optional[str] = None
    param: Optional[int] = None


class ClassifyRequest(BaseModel):
    algebra: AlgebraDoc
    max_param: int = 4


class DualRequest(BaseModel):
    algebra: AlgebraDoc


class SpaceRequest(BaseModel):
    space: SpaceDoc


class GlivenkoRequest(BaseModel):
    algebra: AlgebraDoc


class FreeRequest(BaseModel):
    n: int
    counts: bool = False


class EnumerateRequest(BaseModel):
    max_size: int


class VerifyRequest(BaseModel):
    suite: str = 'paper'
    max_size: Optional[int] = None


class DotRequest(BaseModel):
    algebra: Optional[AlgebraDoc] = None
    space: Optional[SpaceDoc] = None
    generators: Optional[list] = None


def _algebra(doc):
    return serialize.algebra_from_dict(doc.model_dump(), config=CONFIG)


def _space(doc, validate=True):
    return serialize.space_from_dict(doc.model_dump(), config=CONFIG,
                                     validate=validate)


@app.get('/health')
def health():
    return {'ok': True, 'version': __version__}


@app.get('/config')
def get_config():
    return {
        'enumeration_cap': CONFIG.enumeration_cap,
        'space_scan_bound': CONFIG.space_scan_bound,
        'free_rank_cap': CONFIG.free_rank_cap,
        'allow_rank_3': CONFIG.allow_rank_3,
        'materialize_cap': CONFIG.materialize_cap,
        'parallelism': CONFIG.parallelism,
    }


@app.post('/chain')
def make_chain(req: ChainRequest):
    coords = ChainCoordinates.parse(req.coords)
    algebra = build_chain(coords)
    return {'coords': coords.display(), 'size': algebra.n,
            'algebra': serialize.algebra_to_dict(algebra)}


@app.post('/check')
def check(req: CheckRequest):
    algebra = _algebra(req.algebra)
    if req.identity is not None:
        identity = terms.parse_identity(req.identity)
    elif req.name is not None:
        identity = terms.catalog(req.name, req.param)
    else:
        raise InvalidInput('request needs either identity text or a name')
    cex = terms.check_identity(algebra, identity,
                               parallelism=CONFIG.parallelism)
    return {
        'identity': terms.render_identity(identity),
        'holds': cex is None,
        'counterexample': None if cex is None else
        {v: algebra.label(a) for v, a in sorted(cex.items())},
    }


@app.post('/classify')
def classify_algebra(req: ClassifyRequest):
    algebra = _algebra(req.algebra)
    cls = classify(algebra)
    out = {'fsi': cls.fsi, 'si': cls.si, 'simple': cls.simple}
    if cls.fsi:
        report = varieties.width_of(algebra)
        out['width'] = report.width
        out['orthogonal_set'] = [algebra.label(a)
                                 for a in report.orthogonal_set]
    else:
        out['width'] = None
    n_h, n_he = varieties.height_params(algebra)
    out['heights'] = {'H': n_h, 'HE': n_he}
    realized, _ = varieties.discriminator_check(algebra)
    out['discriminator'] = realized
    memberships = {}
    for family, lo in (('W', 1), ('H', 2), ('HE', 2)):
        for param in range(lo, req.max_param + 1):
            tag = varieties.VarietyTag(family, param)
            holds, _ = varieties.membership(algebra, tag)
            memberships[str(tag)] = holds
    out['memberships'] = memberships
    return out


@app.post('/dual')
def dual(req: DualRequest):
    algebra = _algebra(req.algebra)
    return {'space': serialize.space_to_dict(dual_space(algebra))}


@app.post('/space/validate')
def space_validate(req: SpaceRequest):
    space = _space(req.space, validate=False)
    report = validate_mg_space(space, config=CONFIG, allow_partial=True)
    return {'ok': report.ok, 'partial': report.partial,
            'checked_sets': report.checked_sets,
            'violations': [list(map(str, v)) for v in report.violations[:10]]}


@app.post('/space/algebra')
def space_algebra(req: SpaceRequest):
    space = _space(req.space)
    algebra = algebra_from_space(space, config=CONFIG)
    return {'algebra': serialize.algebra_to_dict(algebra)}


@app.post('/glivenko')
def glivenko_endpoint(req: GlivenkoRequest):
    algebra = _algebra(req.algebra)
    report = glivenko.glivenko_hom(algebra)
    specials = glivenko.special_elements(algebra)
    return {
        'regular': [algebra.label(a) for a in specials.regular],
        'dense': [algebra.label(a) for a in specials.dense],
        'boolean': [algebra.label(a) for a in specials.boolean],
        'kernel': [algebra.label(a) for a in report.kernel],
        'map': {algebra.label(a): report.collapse.label(report.hom.mapping[a])
                for a in range(algebra.n)},
        'collapse': serialize.algebra_to_dict(report.collapse),
        'isomorphic_to_quotient': report.quotient_iso is not None,
        'semisimple': report.semisimple,
    }


@app.post('/free')
def free_endpoint(req: FreeRequest):
    built = free.free_algebra(req.n, config=CONFIG)
    pres = built.presentation
    out = {
        'n': req.n,
        'exists_pi': len(pres.forest.nodes),
        'pi': pres.n_points,
        'algebra': built.size,
        'space': serialize.space_to_dict(pres.space),
        'generators': [sorted(_bits(mask)) for mask in pres.generator_masks],
    }
    if req.counts:
        report = free.count_checks(req.n, config=CONFIG)
        report['min_by_m'] = {str(k): v for k, v in report['min_by_m'].items()}
        report['stirling_by_m'] = {str(k): v
                                   for k, v in report['stirling_by_m'].items()}
        out['counts'] = report
    return out


def _bits(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@app.post('/enumerate')
def enumerate_endpoint(req: EnumerateRequest):
    algebras = enumerate_algebras(req.max_size, config=CONFIG)
    return {'count': len(algebras),
            'algebras': [serialize.algebra_to_dict(a) for a in algebras]}


@app.post('/verify')
def verify_endpoint(req: VerifyRequest):
    results = verify.run_suite(req.suite, config=CONFIG,
                               max_size=req.max_size)
    report = verify.report_dict(results)
    report['text'] = verify.render_report(results)
    return report


@app.post('/dot')
def dot_endpoint(req: DotRequest):
    if (req.algebra is None) == (req.space is None):
        raise InvalidInput('request needs exactly one of algebra or space')
    if req.algebra is not None:
        return {'dot': dot.algebra_dot(_algebra(req.algebra))}
    space = _space(req.space, validate=False)
    masks = []
    for points in req.generators or []:
        mask = 0
        for x in points:
            if not isinstance(x, int) or not 0 <= x < space.n:
                raise InvalidInput('generator point out of range', point=x)
            mask |= 1 << x
        masks.append(mask)
    return {'dot': dot.space_dot(space, tuple(masks))}
