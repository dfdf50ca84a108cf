"""Text input documents (YAML or JSON) describing one structure by its constants.

Layout::

    name: sl2-proto            # optional
    description: ...           # optional
    rank: 3                    # n
    base_dim: 0                # m
    bracket_A:   [{i: 1, j: 2, k: 2, coeff: "2"}, ...]     # [e_i, e_j] = coeff e_k, i < j
    bracket_dual: [{i: 2, j: 3, k: 1, coeff: "1"}, ...]    # [e^i, e^j] = coeff e^k, i < j
    anchor_A:    [{i: 1, alpha: 1, coeff: "1"}, ...]       # a_A(e_i) = sum coeff d/dq^alpha
    anchor_dual: [{i: 1, alpha: 2, coeff: "1 + q1*q2"}]
    tau: [{i: 1, j: 2, k: 3, coeff: "1"}]                  # i < j < k
    phi: [{i: 1, j: 2, k: 3, coeff: "1"}]

Coefficients are exact: integers, "p/q" strings or polynomial strings in q1..qm.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import yaml

from .catalog import make_proto
from .proto import ProtoData
from .ring import Poly, parse_poly


class DocumentError(ValueError):
    """Invalid input document; the message carries the line number when known."""


TOP_FIELDS = ("name", "description", "rank", "base_dim", "bracket_A", "bracket_dual",
              "anchor_A", "anchor_dual", "tau", "phi")
REQUIRED = ("rank", "base_dim")
ENTRY_KEYS = {
    "bracket_A": ("i", "j", "k"),
    "bracket_dual": ("i", "j", "k"),
    "anchor_A": ("i", "alpha"),
    "anchor_dual": ("i", "alpha"),
    "tau": ("i", "j", "k"),
    "phi": ("i", "j", "k"),
}


@dataclass
class InputDocument:
    rank: int
    base_dim: int
    bracket_A: dict = field(default_factory=dict)
    bracket_dual: dict = field(default_factory=dict)
    anchor_A: dict = field(default_factory=dict)
    anchor_dual: dict = field(default_factory=dict)
    tau: dict = field(default_factory=dict)
    phi: dict = field(default_factory=dict)
    name: str = ""
    description: str = ""

    def to_proto(self) -> ProtoData:
        return make_proto(
            self.rank, self.base_dim,
            a=self.bracket_A, b=self.bracket_dual,
            anchor_A=self.anchor_A, anchor_dual=self.anchor_dual,
            tau=self.tau, phi=self.phi, name=self.name,
        )

    @classmethod
    def from_proto(cls, P: ProtoData, description: str = "") -> "InputDocument":
        def triples(S):
            return {(i, j, k): c for (i, j), row in S.brackets().items() for k, c in row.items()}

        def three(t):
            out = {}
            for mask, c in t.items():
                out[tuple(i + 1 for i in range(t.n) if mask >> i & 1)] = c
            return out

        return cls(
            rank=P.n, base_dim=P.m,
            bracket_A=triples(P.S_A), bracket_dual=triples(P.S_star),
            anchor_A=P.S_A.anchors(), anchor_dual=P.S_star.anchors(),
            tau=three(P.tau), phi=three(P.phi),
            name=P.name, description=description,
        )

    def to_data(self) -> dict:
        out: dict = {}
        if self.name:
            out["name"] = self.name
        if self.description:
            out["description"] = self.description
        out["rank"] = self.rank
        out["base_dim"] = self.base_dim
        for key, names in ENTRY_KEYS.items():
            table = getattr(self, key)
            if table:
                out[key] = [
                    {**dict(zip(names, idx)), "coeff": table[idx].to_text()}
                    for idx in sorted(table)
                ]
        return out


def dumps(doc: InputDocument) -> str:
    return yaml.safe_dump(doc.to_data(), sort_keys=False, default_flow_style=None, allow_unicode=True)


def save(doc: InputDocument, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


def load(path: str) -> InputDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from exc
    return loads(text, source=path)


def loads(text: str, source: str = "<input>") -> InputDocument:
    try:
        root = yaml.compose(text)
    except yaml.YAMLError as exc:
        raise DocumentError(f"{source}: not valid YAML/JSON: {exc}") from exc
    return _Reader(source).document(root)


class _Reader:
    def __init__(self, source: str):
        self.source = source

    def fail(self, node, message: str):
        line = f":{node.start_mark.line + 1}" if node is not None else ""
        raise DocumentError(f"{self.source}{line}: {message}")

    def mapping(self, node, what: str) -> dict:
        if not isinstance(node, yaml.MappingNode):
            self.fail(node, f"{what} must be a mapping")
        out = {}
        for knode, vnode in node.value:
            if not isinstance(knode, yaml.ScalarNode):
                self.fail(knode, f"{what} has a non-scalar key")
            if knode.value in out:
                self.fail(knode, f"duplicate field {knode.value!r} in {what}")
            out[knode.value] = (knode, vnode)
        return out

    def integer(self, node, what: str) -> int:
        if not isinstance(node, yaml.ScalarNode) or node.tag != "tag:yaml.org,2002:int":
            self.fail(node, f"{what} must be an integer")
        return int(node.value)

    def text(self, node, what: str) -> str:
        if not isinstance(node, yaml.ScalarNode):
            self.fail(node, f"{what} must be a string")
        return node.value

    def coeff(self, node, m: int) -> Poly:
        if not isinstance(node, yaml.ScalarNode) or node.tag == "tag:yaml.org,2002:float":
            self.fail(node, "coeff must be an exact integer, 'p/q' string or polynomial string (no floats)")
        try:
            return parse_poly(node.value, m)
        except ValueError as exc:
            self.fail(node, f"bad coefficient {node.value!r}: {exc}")

    def document(self, root) -> InputDocument:
        if root is None:
            raise DocumentError(f"{self.source}: empty document")
        top = self.mapping(root, "document")
        for key, (knode, _) in top.items():
            if key not in TOP_FIELDS:
                self.fail(knode, f"unknown field {key!r}; allowed: {', '.join(TOP_FIELDS)}")
        for key in REQUIRED:
            if key not in top:
                self.fail(root, f"missing required field {key!r}")
        n = self.integer(top["rank"][1], "rank")
        m = self.integer(top["base_dim"][1], "base_dim")
        if n < 1:
            self.fail(top["rank"][1], "rank must be at least 1")
        if m < 0:
            self.fail(top["base_dim"][1], "base_dim must be nonnegative")
        doc = InputDocument(rank=n, base_dim=m)
        if "name" in top:
            doc.name = self.text(top["name"][1], "name")
        if "description" in top:
            doc.description = self.text(top["description"][1], "description")
        for key, names in ENTRY_KEYS.items():
            if key in top:
                setattr(doc, key, self.entries(top[key][1], key, names, n, m))
        return doc

    def entries(self, node, key: str, names: tuple, n: int, m: int) -> dict:
        if not isinstance(node, yaml.SequenceNode):
            self.fail(node, f"{key} must be a list of entries")
        out = {}
        allowed = set(names) | {"coeff"}
        for item in node.value:
            fields = self.mapping(item, f"{key} entry")
            for name, (knode, _) in fields.items():
                if name not in allowed:
                    self.fail(knode, f"unknown field {name!r} in {key} entry; allowed: {', '.join(sorted(allowed))}")
            missing = [x for x in names + ("coeff",) if x not in fields]
            if missing:
                self.fail(item, f"{key} entry lacks {', '.join(missing)}")
            idx = tuple(self.integer(fields[x][1], x) for x in names)
            for x, v in zip(names, idx):
                hi = m if x == "alpha" else n
                if not 1 <= v <= hi:
                    self.fail(fields[x][1], f"{x} = {v} out of range 1..{hi}")
            if key.startswith("bracket") and not idx[0] < idx[1]:
                self.fail(item, f"{key} entries need i < j, got i={idx[0]}, j={idx[1]}")
            if key in ("tau", "phi") and not idx[0] < idx[1] < idx[2]:
                self.fail(item, f"{key} entries need i < j < k, got {idx}")
            if idx in out:
                self.fail(item, f"repeated {key} entry {idx}")
            c = self.coeff(fields["coeff"][1], m)
            out[idx] = c
        return {k: v for k, v in out.items() if v}
