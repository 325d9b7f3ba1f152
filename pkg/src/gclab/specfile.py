"""Strict YAML spec files: named records with a ``kind`` and cross-references.

Every record is a mapping; unknown keys, missing keys and dangling
references are errors.  Records are built lazily and validated by the
module that owns them.  Supported kinds and keys::

    group       cyclic: [m, ...] | table: [[...]]  (labels: [...])
    abelian     moduli: [m, ...]
    module      group, coeffs, action: trivial | matrices: [[[...]]] | tables: [[...]]
    cochain     module, degree, values: {"s,t": v}   (missing entries are 0)
    extension   cocycle | total, kernel, embed, quotient, projection
    section     extension, images
    groupoid    group | pair | discrete | partition | action: {group, table}
                | objects, src, tgt, compose: [[f, g, fg], ...]
    torsor      groupoid, regular: root | base, proj, anchor, action: [[m, p, q], ...]
    equivariant gal, module, then groupoid with objects/morphisms (band optional)
                | cocycle | splitting: {n, p}
    equivariant_torsor  equivariant, torsor, gamma (base_action optional) | cocycle
"""

import numpy as np
import yaml

from . import algebra, cohomology, extensions, galois, groupoid, quantum, torsor
from .errors import InvalidInput

SCHEMA = {
    "group": ({"kind"}, {"cyclic", "table", "labels"}),
    "abelian": ({"kind", "moduli"}, set()),
    "module": ({"kind", "group", "coeffs"}, {"action", "matrices", "tables"}),
    "cochain": ({"kind", "module", "degree"}, {"values"}),
    "extension": ({"kind"}, {"cocycle", "total", "kernel", "embed", "quotient", "projection"}),
    "section": ({"kind", "extension", "images"}, set()),
    "groupoid": ({"kind"}, {"group", "pair", "discrete", "partition", "action", "objects",
                            "src", "tgt", "compose", "labels"}),
    "torsor": ({"kind", "groupoid"}, {"regular", "base", "proj", "anchor", "action"}),
    "equivariant": ({"kind"}, {"gal", "module", "groupoid", "objects", "morphisms", "band",
                               "cocycle", "splitting"}),
    "equivariant_torsor": ({"kind"}, {"equivariant", "torsor", "gamma", "base_action",
                                      "cocycle"}),
}

EXCLUSIVE = {
    "group": [{"cyclic"}, {"table"}],
    "module": [{"action"}, {"matrices"}, {"tables"}],
    "extension": [{"cocycle"}, {"total", "kernel", "embed", "quotient", "projection"}],
    "groupoid": [{"group"}, {"pair"}, {"discrete"}, {"partition"}, {"action"},
                 {"objects", "src", "tgt", "compose"}],
    "torsor": [{"regular"}, {"base", "proj", "anchor", "action"}],
    "equivariant": [{"cocycle"}, {"splitting"}, {"gal", "module", "groupoid", "objects",
                                                  "morphisms"}],
    "equivariant_torsor": [{"cocycle"}, {"equivariant", "torsor", "gamma"}],
}


class SpecError(InvalidInput):
    """A malformed spec document."""


def _check_keys(name, rec):
    if not isinstance(rec, dict):
        raise SpecError(f"record {name!r} is not a mapping")
    kind = rec.get("kind")
    if kind not in SCHEMA:
        raise SpecError(f"record {name!r} has unknown kind {kind!r}")
    required, optional = SCHEMA[kind]
    keys = set(rec)
    unknown = keys - required - optional
    if unknown:
        raise SpecError(f"record {name!r}: unknown key {sorted(unknown)[0]!r}")
    missing = required - keys
    if missing:
        raise SpecError(f"record {name!r}: missing key {sorted(missing)[0]!r}")
    if kind in EXCLUSIVE:
        chosen = [g for g in EXCLUSIVE[kind] if keys & g]
        if len(chosen) != 1:
            raise SpecError(f"record {name!r}: give exactly one of "
                            + " | ".join("/".join(sorted(g)) for g in EXCLUSIVE[kind]))
        absent = chosen[0] - keys
        if absent:
            raise SpecError(f"record {name!r}: missing key {sorted(absent)[0]!r}")
    return kind


def _parse_args(key, degree):
    if degree == 0:
        return ()
    if isinstance(key, int):
        parts = [key]
    else:
        parts = [int(s) for s in str(key).replace(" ", "").split(",") if s != ""]
    if len(parts) != degree:
        raise SpecError(f"cochain key {key!r} does not have {degree} arguments")
    return tuple(parts)


def _value(v):
    return tuple(int(x) for x in v) if isinstance(v, (list, tuple)) else (int(v),)


class SpecDocument:
    def __init__(self, records, source="<memory>"):
        if not isinstance(records, dict) or not records:
            raise SpecError(f"{source}: expected a non-empty mapping of named records")
        self.source = source
        self.records = records
        self.kinds = {name: _check_keys(name, rec) for name, rec in records.items()}
        self._built = {}
        self._building = set()

    @classmethod
    def from_text(cls, text, source="<memory>"):
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise SpecError(f"{source}: not valid YAML ({exc})") from None
        return cls(data, source)

    def names(self, kind=None):
        return [n for n, k in self.kinds.items() if kind is None or k == kind]

    def only(self, kind):
        names = self.names(kind)
        if len(names) != 1:
            raise SpecError(f"{self.source}: expected exactly one {kind} record, found {len(names)}")
        return self.get(names[0])

    def get(self, name, kind=None):
        if name not in self.records:
            raise SpecError(f"reference to undefined record {name!r}")
        if kind is not None and self.kinds[name] != kind:
            raise SpecError(f"record {name!r} is a {self.kinds[name]}, expected {kind}")
        if name in self._built:
            return self._built[name]
        if name in self._building:
            raise SpecError(f"circular reference through {name!r}")
        self._building.add(name)
        try:
            obj = getattr(self, "_build_" + self.kinds[name])(self.records[name])
        finally:
            self._building.discard(name)
        self._built[name] = obj
        return obj

    def build_all(self):
        return {name: self.get(name) for name in self.records}

    # builders ---------------------------------------------------------------

    def _build_group(self, r):
        if "cyclic" in r:
            return algebra.group_from_cyclic_factors(r["cyclic"])
        return algebra.validate_group(r["table"], r.get("labels"))

    def _build_abelian(self, r):
        return algebra.AbelianGroup(r["moduli"])

    def _build_module(self, r):
        G = self.get(r["group"], "group")
        A = self.get(r["coeffs"], "abelian")
        if "action" in r:
            if r["action"] != "trivial":
                raise SpecError("module action must be 'trivial', or give matrices or tables")
            return algebra.trivial_module(G, A)
        if "matrices" in r:
            return algebra.module_from_matrices(G, A, r["matrices"])
        return algebra.validate_gmodule(G, A, r["tables"])

    def _build_cochain(self, r):
        M = self.get(r["module"], "module")
        deg = int(r["degree"])
        values = r.get("values") or {}
        if not isinstance(values, dict):
            raise SpecError("cochain values must be a mapping")
        recs = {_parse_args(k, deg): _value(v) for k, v in values.items()}
        return cohomology.Cochain.from_records(M, deg, recs)

    def _build_extension(self, r):
        if "cocycle" in r:
            h = self.get(r["cocycle"], "cochain")
            return extensions.extension_from_cocycle(h.module, h)
        return extensions.extension_from_data(
            self.get(r["total"], "group"), self.get(r["kernel"], "abelian"), r["embed"],
            self.get(r["quotient"], "group"), r["projection"])

    def _build_section(self, r):
        return extensions.make_section(self.get(r["extension"], "extension"), r["images"])

    def _build_groupoid(self, r):
        if "group" in r:
            return groupoid.groupoid_from_group(self.get(r["group"], "group"))
        if "pair" in r:
            return groupoid.pair_groupoid(int(r["pair"]))
        if "discrete" in r:
            return groupoid.discrete_groupoid(int(r["discrete"]))
        if "partition" in r:
            return groupoid.equivalence_relation_groupoid(r["partition"])
        if "action" in r:
            a = r["action"]
            if not isinstance(a, dict) or set(a) != {"group", "table"}:
                raise SpecError("groupoid action needs exactly the keys group and table")
            return groupoid.action_groupoid(self.get(a["group"], "group"), a["table"],
                                            r.get("labels"))
        comp = {}
        for entry in r["compose"]:
            if len(entry) != 3:
                raise SpecError("compose entries are [f, g, f;g]")
            comp[(int(entry[0]), int(entry[1]))] = int(entry[2])
        return groupoid.validate_groupoid(int(r["objects"]), r["src"], r["tgt"], comp,
                                          object_labels=r.get("labels"))

    def _build_torsor(self, r):
        X = self.get(r["groupoid"], "groupoid")
        if "regular" in r:
            return torsor.regular_torsor(X, int(r["regular"]))
        n = len(r["proj"])
        act = np.full((X.n_morphisms, n), -1, dtype=np.int64)
        for entry in r["action"]:
            m, p, q = (int(v) for v in entry)
            if not (0 <= m < X.n_morphisms and 0 <= p < n):
                raise SpecError(f"torsor action entry {entry} out of range")
            act[m, p] = q
        return torsor.validate_torsor(X, int(r["base"]), r["proj"], r["anchor"], act)

    def _context(self, r):
        G = self.get(r["gal"], "group")
        M = self.get(r["module"], "module")
        return galois.GaloisContext(G, M)

    def _build_equivariant(self, r):
        if "cocycle" in r:
            h = self.get(r["cocycle"], "cochain")
            ctx = galois.GaloisContext(h.module.group, h.module)
            cg = galois.groupoid_from_cocycle(ctx, h)
            return ctx, cg.groupoid, cg
        if "splitting" in r:
            s = r["splitting"]
            if not isinstance(s, dict) or set(s) != {"n", "p"}:
                raise SpecError("splitting needs exactly the keys n and p")
            S = quantum.splitting_groupoid(int(s["n"]), int(s["p"]))
            M = algebra.trivial_module(S.data.gal, S.band.group)
            ctx = galois.GaloisContext(S.data.gal, M)
            oa, ma = S.gal_action()
            return ctx, galois.validate_equivariant_groupoid(ctx, S.groupoid, oa, ma, S.band), S
        ctx = self._context(r)
        X = self.get(r["groupoid"], "groupoid")
        band = None
        if "band" in r:
            A = ctx.A
            value = {int(x): {int(f): A.reduce(_value(v)) for f, v in row.items()}
                     for x, row in r["band"].items()}
            band = groupoid.Band(X, A, value, {x: {a: f for f, a in row.items()}
                                               for x, row in value.items()})
        Xe = galois.validate_equivariant_groupoid(ctx, X, r["objects"], r["morphisms"], band)
        return ctx, Xe, None

    def _build_equivariant_torsor(self, r):
        if "cocycle" in r:
            h = self.get(r["cocycle"], "cochain")
            ctx = galois.GaloisContext(h.module.group, h.module)
            cg = galois.groupoid_from_cocycle(ctx, h)
            return ctx, cg.torsor, cg.basepoint
        ctx, Xe, _ = self.get(r["equivariant"], "equivariant")
        P = self.get(r["torsor"], "torsor")
        if P.groupoid is not Xe.groupoid:
            raise SpecError("torsor and equivariant record use different groupoids")
        base = r.get("base_action") or galois.trivial_base_action(ctx.gal, P.n_base)
        return ctx, galois.validate_equivariant_torsor(ctx, Xe, P, base, r["gamma"]), 0


def load_spec(path):
    """Read and parse a spec file; I/O problems propagate as ``OSError``."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return SpecDocument.from_text(text, str(path))
