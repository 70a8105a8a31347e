"""Instance files: parsing, validation, canonical writing, and the built-in catalog.

A vector instance lists structure constants on a basis e_0..e_{d-1}:

* ``mul[i][j][k]``: e_i·e_j = Σ_k mul[i][j][k] e_k
* ``comul[k][i][j]``: δ(e_k) = Σ_{i,j} comul[k][i][j] e_i⊗e_j
* ``unit``, ``counit``: d-vectors
* optional ``braiding`` (d²×d² matrix, column = source basis element),
  ``parity`` (0/1 per basis element, giving the super-swap), ``antipode`` (d×d)

A set instance gives a Cayley table and the index of its unit.
Scalars are integers or ``"num/den"`` strings.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .calculus import NatGen, SetBackend, VectBackend, from_matrix, from_table
from .errors import ConfigError, SpecError
from .linalg import GF, QQ, parse_scalar
from .monads import ComonadData, MonadData, swap
from .tau import TauBimonadData, as_bimonad, super_swap

CATALOG = (
    "c2_f2",
    "c3_f3",
    "s3_q",
    "sweedler_f5",
    "sweedler_q",
    "monoid_1z_f2",
    "exterior_f3",
    "z4_set",
    "monoid_1z_set",
)

_VECT_KEYS = ("name", "backend", "field", "dim", "labels", "mul", "unit", "comul", "counit", "braiding", "parity", "antipode")
_SET_KEYS = ("name", "backend", "size", "labels", "table", "unit")


@dataclass
class Instance:
    name: str
    backend: object
    monad: MonadData
    comonad: ComonadData
    tau: NatGen
    antipode: Optional[NatGen] = None
    parity: Optional[list] = None
    spec: dict = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return self.backend.kind

    def tau_bimonad(self) -> TauBimonadData:
        return TauBimonadData(self.monad, self.comonad, self.tau)

    def bimonad(self):
        """The bimonad with the entwining induced by the braiding."""
        return as_bimonad(self.tau_bimonad())


def catalog_dir() -> Path:
    env = os.environ.get("HOPF_FORGE_CATALOG_DIR")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "catalog"


def resolve(name_or_path: str) -> Path:
    """A file path if it exists, otherwise a catalog entry by name."""
    p = Path(name_or_path)
    if p.is_file():
        return p
    c = catalog_dir() / (name_or_path if name_or_path.endswith(".json") else name_or_path + ".json")
    if c.is_file():
        return c
    raise SpecError(f"no instance file or catalog entry named {name_or_path!r}")


def read_spec(name_or_path: str) -> dict:
    path = resolve(name_or_path)
    text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise SpecError("instance file must hold a JSON object")
    doc.setdefault("name", path.stem)
    return doc


def load(name_or_path: str) -> Instance:
    return from_spec(read_spec(name_or_path))


# ---------------------------------------------------------------- parsing


def _int(doc, key, minimum=None) -> int:
    v = doc.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise SpecError(f"expected an integer, got {v!r}", field=key)
    if minimum is not None and v < minimum:
        raise SpecError(f"must be at least {minimum}", field=key)
    return v


def _scalar(F, v, where):
    try:
        return F(parse_scalar(v))
    except (ValueError, ZeroDivisionError, TypeError):
        raise SpecError(f"not an exact scalar: {v!r}", field=where) from None


def _tensor(F, v, shape, where):
    if len(shape) == 0:
        return _scalar(F, v, where)
    if not isinstance(v, list) or len(v) != shape[0]:
        got = len(v) if isinstance(v, list) else type(v).__name__
        raise SpecError(f"expected a list of length {shape[0]}, got {got}", field=where)
    return [_tensor(F, x, shape[1:], f"{where}[{i}]") for i, x in enumerate(v)]


def _field(doc):
    f = doc.get("field")
    if not isinstance(f, list) or not f or f[0] not in ("Fp", "Q"):
        raise SpecError('expected ["Fp", p] or ["Q"]', field="field")
    if f[0] == "Q":
        if len(f) != 1:
            raise SpecError('rational field takes no parameters', field="field")
        return QQ
    if len(f) != 2 or not isinstance(f[1], int) or isinstance(f[1], bool):
        raise SpecError('expected ["Fp", p] with integer p', field="field")
    try:
        return GF(f[1])
    except ConfigError as exc:
        raise SpecError(str(exc), field="field") from None


def _labels(doc, n, default):
    lab = doc.get("labels")
    if lab is None:
        return default
    if not isinstance(lab, list) or len(lab) != n or not all(isinstance(x, str) and x for x in lab):
        raise SpecError(f"expected {n} non-empty strings", field="labels")
    if len(set(lab)) != n:
        raise SpecError("labels must be distinct", field="labels")
    return lab


def from_spec(doc: dict) -> Instance:
    backend = doc.get("backend")
    if backend == "vect":
        return _vect_from_spec(doc)
    if backend == "set":
        return _set_from_spec(doc)
    raise SpecError(f"backend must be 'vect' or 'set', got {backend!r}", field="backend")


def _vect_from_spec(doc: dict) -> Instance:
    unknown = set(doc) - set(_VECT_KEYS)
    if unknown:
        raise SpecError(f"unknown keys {sorted(unknown)}", field=sorted(unknown)[0])
    F = _field(doc)
    d = _int(doc, "dim", 1)
    for key in ("mul", "unit", "comul", "counit"):
        if key not in doc:
            raise SpecError("missing", field=key)
    labels = _labels(doc, d, [f"e{i}" for i in range(d)])
    b = VectBackend(d, F, labels)
    mul = _tensor(F, doc["mul"], (d, d, d), "mul")
    unit = _tensor(F, doc["unit"], (d,), "unit")
    comul = _tensor(F, doc["comul"], (d, d, d), "comul")
    counit = _tensor(F, doc["counit"], (d,), "counit")
    M = [[0] * (d * d) for _ in range(d)]
    D = [[0] * d for _ in range(d * d)]
    for i in range(d):
        for j in range(d):
            for k in range(d):
                M[k][i * d + j] = mul[i][j][k]
                D[i * d + j][k] = comul[k][i][j]
    m = from_matrix(b, 2, 1, M)
    e = from_matrix(b, 0, 1, [[u] for u in unit])
    delta = from_matrix(b, 1, 2, D)
    eps = from_matrix(b, 1, 0, [counit])
    if "braiding" in doc and "parity" in doc:
        raise SpecError("braiding and parity are mutually exclusive", field="parity")
    parity = None
    if "braiding" in doc:
        tau = from_matrix(b, 2, 2, _tensor(F, doc["braiding"], (d * d, d * d), "braiding"))
    elif "parity" in doc:
        parity = doc["parity"]
        if not isinstance(parity, list) or len(parity) != d or any(p not in (0, 1) or isinstance(p, bool) for p in parity):
            raise SpecError(f"expected {d} entries from {{0, 1}}", field="parity")
        tau = super_swap(b, parity)
    else:
        tau = swap(b)
    S = None
    if "antipode" in doc:
        S = from_matrix(b, 1, 1, _tensor(F, doc["antipode"], (d, d), "antipode"))
    name = doc.get("name", "instance")
    return Instance(str(name), b, MonadData(m, e), ComonadData(delta, eps), tau, S, parity, dict(doc))


def _set_from_spec(doc: dict) -> Instance:
    unknown = set(doc) - set(_SET_KEYS)
    if unknown:
        raise SpecError(f"unknown keys {sorted(unknown)}", field=sorted(unknown)[0])
    s = _int(doc, "size", 1)
    table = doc.get("table")
    if not isinstance(table, list) or len(table) != s:
        raise SpecError(f"expected {s} rows", field="table")
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != s:
            raise SpecError(f"expected {s} entries", field=f"table[{i}]")
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < s:
                raise SpecError(f"entry {v!r} outside 0..{s - 1}", field=f"table[{i}][{j}]")
    u = _int(doc, "unit", 0)
    if u >= s:
        raise SpecError(f"unit index outside 0..{s - 1}", field="unit")
    labels = _labels(doc, s, [str(i) for i in range(s)])
    b = SetBackend(s, labels)
    m = from_table(b, 2, 1, [table[g][h] for g in range(s) for h in range(s)])
    e = from_table(b, 0, 1, [u])
    delta = from_table(b, 1, 2, [g * s + g for g in range(s)])
    eps = from_table(b, 1, 0, [0] * s)
    name = doc.get("name", "instance")
    return Instance(str(name), b, MonadData(m, e), ComonadData(delta, eps), swap(b), None, None, dict(doc))


# ---------------------------------------------------------------- writing


def _scal(F, x):
    return F.to_json(x)


def spec_from_structure(
    name: str,
    backend: VectBackend,
    monad: MonadData,
    comonad: ComonadData,
    tau: Optional[NatGen] = None,
    parity=None,
    antipode: Optional[NatGen] = None,
) -> dict:
    """Instance document for a vector-backend structure.

    The braiding is omitted when it is the plain swap and written as a parity
    vector when it equals the super-swap of the given parity.
    """
    F = backend.field
    d = backend.dim
    M = monad.m.matrix.a
    D = comonad.delta.matrix.a
    doc = {"name": name, "backend": "vect"}
    doc["field"] = ["Q"] if F.p is None else ["Fp", F.p]
    doc["dim"] = d
    doc["labels"] = list(backend.labels)
    doc["mul"] = [[[_scal(F, M[k, i * d + j]) for k in range(d)] for j in range(d)] for i in range(d)]
    doc["unit"] = [_scal(F, x) for x in monad.e.matrix.a[:, 0]]
    doc["comul"] = [[[_scal(F, D[i * d + j, k]) for j in range(d)] for i in range(d)] for k in range(d)]
    doc["counit"] = [_scal(F, x) for x in comonad.eps.matrix.a[0, :]]
    if tau is not None:
        if parity is not None and tau == super_swap(backend, parity):
            doc["parity"] = list(parity)
        elif tau != swap(backend):
            doc["braiding"] = tau.matrix.tolist()
    if antipode is not None:
        doc["antipode"] = antipode.matrix.tolist()
    return doc


def dumps_spec(doc: dict) -> str:
    """Canonical text: fixed key order, one key per line, compact values."""
    keys = _VECT_KEYS if doc.get("backend") == "vect" else _SET_KEYS
    extra = [k for k in doc if k not in keys]
    lines = []
    for k in list(keys) + sorted(extra):
        if k in doc:
            lines.append(f"  {json.dumps(k)}: {json.dumps(doc[k], ensure_ascii=False, separators=(', ', ': '))}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def write_spec(doc: dict, path) -> None:
    Path(path).write_text(dumps_spec(doc), encoding="utf-8")


def set_spec_from_structure(name: str, backend: SetBackend, monad: MonadData, comonad: ComonadData, tau: NatGen) -> dict:
    """Instance document for a set-backend structure.

    Set instances carry only a Cayley table and a unit, so the comonad must be
    the diagonal one and the braiding the plain swap.
    """
    s = backend.size
    if backend.contravariant:
        raise SpecError("Map-backend structures have no instance format")
    diag = from_table(backend, 1, 2, [g * s + g for g in range(s)])
    if comonad.delta != diag or tau != swap(backend):
        raise SpecError("only the diagonal comonad with the plain swap has a set instance format")
    t = monad.m.payload.array()
    return {
        "name": name,
        "backend": "set",
        "size": s,
        "labels": list(backend.labels),
        "table": [[int(t[g * s + h]) for h in range(s)] for g in range(s)],
        "unit": int(monad.e.payload.array()[0]),
    }
