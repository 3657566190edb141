"""Finite positively ordered monoids: representation, validation, I/O, isomorphism.

A model is a finite commutative monoid (S, +, 0) with a partial order in which
0 is the least element and addition is monotone.  Such a structure is a
Cu-semigroup in the finite setting: increasing sequences stabilize, so suprema
exist, and the way-below relation collapses to the order itself.

Why the collapse is forced, in two lines: if x <= y then the constant sequence
(y, y, ...) shows x << y fails only if some chain above y avoids x, but every
increasing chain attains its supremum, which dominates y and hence x; and
conversely x << y applied to the constant chain at y gives x <= y.  Every
quantifier of the form "x' << x" is therefore evaluated as "x' <= x" here.

Elements are dense indices 0..n-1; labels are only for I/O.  Models are
immutable after validation and all operations on them are pure, so values may
be shared freely across threads.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass
from functools import cached_property

from .errors import ParseError, PreorderRejected, UnknownLabel, ValidationError

__all__ = [
    "FiniteOrderedMonoid",
    "ModelDocument",
    "validate",
    "parse_model",
    "emit_model",
    "document_of",
    "product_model",
    "infinity_multiple",
    "is_full",
    "is_isomorphic",
    "canonical_form",
    "model_hash",
]


@dataclass(frozen=True)
class ModelDocument:
    """Parsed model file, still at the label level (nothing checked yet)."""

    name: str
    elements: tuple[str, ...]
    zero: str
    add: tuple[tuple[str, ...], ...]
    order: str | tuple[tuple[str, str], ...]  # "algebraic" or pair list
    preorder_ok: bool = False


@dataclass(frozen=True)
class FiniteOrderedMonoid:
    """A validated model.  `add[i][j]` and `leq[i][j]` are index-based tables."""

    name: str
    labels: tuple[str, ...]
    zero: int
    add: tuple[tuple[int, ...], ...]
    leq: tuple[tuple[bool, ...], ...]
    order_mode: str  # "algebraic" | "explicit"
    preorder_ok: bool = False

    @property
    def n(self) -> int:
        return len(self.labels)

    def elements(self) -> range:
        return range(self.n)

    def label(self, x: int) -> str:
        return self.labels[x]

    def index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise UnknownLabel(
                f"no element labelled {label!r} in model {self.name!r}"
            ) from None

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def plus(self, x: int, y: int) -> int:
        return self.add[x][y]

    def le(self, x: int, y: int) -> bool:
        return self.leq[x][y]

    def mul(self, k: int, x: int) -> int:
        """k-fold sum of x (k >= 0).  Stops early once the multiple
        stabilizes, so large k costs at most a chain's length."""
        acc = self.zero
        for _ in range(k):
            nxt = self.add[acc][x]
            if nxt == acc:
                return acc
            acc = nxt
        return acc

    def sum(self, xs) -> int:
        acc = self.zero
        for x in xs:
            acc = self.add[acc][x]
        return acc

    def below(self, x: int) -> tuple[int, ...]:
        """Elements <= x, ascending by index."""
        return self._below[x]

    @cached_property
    def _below(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(y for y in range(self.n) if self.leq[y][x]) for x in range(self.n)
        )

    @cached_property
    def inf_table(self) -> tuple[int, ...]:
        """inf_table[x] is the stabilized multiple of x (the value of k*x once
        k*x = (k+1)*x; reached within n steps in a partial order)."""
        out = []
        for x in range(self.n):
            cur = x
            for _ in range(self.n + 1):
                nxt = self.add[cur][x]
                if nxt == cur:
                    break
                cur = nxt
            else:
                raise AssertionError(
                    f"multiples of {self.labels[x]!r} did not stabilize within n steps"
                )
            out.append(cur)
        return tuple(out)

    def inf(self, x: int) -> int:
        return self.inf_table[x]

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(e for e in range(self.n) if self.add[e][e] == e)

    def is_idempotent_model(self) -> bool:
        return len(self.idempotents) == self.n

    def rename(self, name: str) -> "FiniteOrderedMonoid":
        return FiniteOrderedMonoid(
            name, self.labels, self.zero, self.add, self.leq,
            self.order_mode, self.preorder_ok,
        )


def require_partial_order(model: FiniteOrderedMonoid) -> None:
    """Guard used by every operation whose meaning needs antisymmetry.

    Only the validator and the refinement-monoid operations accept
    preorder_ok models.
    """
    if model.preorder_ok:
        raise PreorderRejected(
            f"model {model.name!r} allows a preorder; this operation needs a partial order"
        )


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _algebraic_relation(add, n) -> list[list[bool]]:
    # x <= y iff x + c = y for some c
    leq = [[False] * n for _ in range(n)]
    for x in range(n):
        row = add[x]
        for c in range(n):
            leq[x][row[c]] = True
    return leq


def _closure(pairs, n) -> list[list[bool]]:
    # reflexive-transitive closure of the given pairs
    leq = [[i == j for j in range(n)] for i in range(n)]
    for i, j in pairs:
        leq[i][j] = True
    for k in range(n):
        lk = leq[k]
        for i in range(n):
            if leq[i][k]:
                li = leq[i]
                for j in range(n):
                    if lk[j]:
                        li[j] = True
    return leq


def validate(doc: ModelDocument) -> FiniteOrderedMonoid:
    """Check every law and return the validated model.

    Reports the first violated law with a concrete binding: the triple breaking
    associativity, the pair breaking commutativity or monotonicity, the
    antisymmetry cycle, and so on.  In algebraic mode the order is computed
    from the addition table; explicit pair lists are closed reflexively and
    transitively before the remaining laws are checked.
    """
    labels = tuple(doc.elements)
    n = len(labels)
    if n == 0:
        raise ValidationError("shape", "a model needs at least one element")
    seen = set()
    for lab in labels:
        if not lab:
            raise ValidationError("labels", "empty label")
        if lab in seen:
            raise ValidationError("labels", f"duplicate label {lab!r}")
        seen.add(lab)
    index = {lab: i for i, lab in enumerate(labels)}
    if doc.zero not in index:
        raise ValidationError("zero", f"zero label {doc.zero!r} is not an element")
    zero = index[doc.zero]

    if len(doc.add) != n or any(len(row) != n for row in doc.add):
        raise ValidationError("shape", f"add table must be {n}x{n}")
    add = []
    for i, row in enumerate(doc.add):
        out = []
        for j, lab in enumerate(row):
            if lab not in index:
                raise ValidationError(
                    "shape",
                    f"add[{labels[i]!r}][{labels[j]!r}] = {lab!r} is not an element",
                )
            out.append(index[lab])
        add.append(tuple(out))
    add = tuple(add)

    for x in range(n):
        if add[zero][x] != x or add[x][zero] != x:
            raise ValidationError(
                "neutral element",
                f"{doc.zero} + {labels[x]} = {labels[add[zero][x]]}",
                {"x": labels[x]},
            )
    for x in range(n):
        for y in range(x + 1, n):
            if add[x][y] != add[y][x]:
                raise ValidationError(
                    "commutativity",
                    f"{labels[x]} + {labels[y]} != {labels[y]} + {labels[x]}",
                    {"x": labels[x], "y": labels[y]},
                )
    for x in range(n):
        for y in range(n):
            xy = add[x][y]
            for z in range(n):
                if add[xy][z] != add[x][add[y][z]]:
                    raise ValidationError(
                        "associativity",
                        f"({labels[x]} + {labels[y]}) + {labels[z]} != "
                        f"{labels[x]} + ({labels[y]} + {labels[z]})",
                        {"x": labels[x], "y": labels[y], "z": labels[z]},
                    )

    if doc.order == "algebraic":
        order_mode = "algebraic"
        leq = _algebraic_relation(add, n)
    else:
        order_mode = "explicit"
        pairs = []
        for a, b in doc.order:
            if a not in index or b not in index:
                raise ValidationError("order", f"order pair ({a!r}, {b!r}) uses unknown labels")
            pairs.append((index[a], index[b]))
        leq = _closure(pairs, n)

    if not doc.preorder_ok:
        for x in range(n):
            for y in range(x + 1, n):
                if leq[x][y] and leq[y][x]:
                    raise ValidationError(
                        "antisymmetry",
                        f"{labels[x]} ≤ {labels[y]} ≤ {labels[x]}",
                        {"x": labels[x], "y": labels[y]},
                    )

    for x in range(n):
        if not leq[zero][x]:
            raise ValidationError(
                "positivity", f"{doc.zero} ≤ {labels[x]} fails", {"x": labels[x]}
            )

    if order_mode == "explicit":
        # Monotonicity: x <= x' and y <= y' force x+y <= x'+y'.  In algebraic
        # mode this is automatic (sum the two witnessing summands).
        for x in range(n):
            for xp in range(n):
                if not leq[x][xp]:
                    continue
                for y in range(n):
                    for yp in range(n):
                        if leq[y][yp] and not leq[add[x][y]][add[xp][yp]]:
                            raise ValidationError(
                                "monotonicity",
                                f"{labels[x]} ≤ {labels[xp]} and "
                                f"{labels[y]} ≤ {labels[yp]} but "
                                f"{labels[x]}+{labels[y]} ≤ {labels[xp]}+{labels[yp]} fails",
                                {"x": labels[x], "x'": labels[xp],
                                 "y": labels[y], "y'": labels[yp]},
                            )

    return FiniteOrderedMonoid(
        name=doc.name,
        labels=labels,
        zero=zero,
        add=add,
        leq=tuple(tuple(row) for row in leq),
        order_mode=order_mode,
        preorder_ok=bool(doc.preorder_ok),
    )


# ---------------------------------------------------------------------------
# Elementary operations
# ---------------------------------------------------------------------------

def infinity_multiple(model: FiniteOrderedMonoid, x: int) -> int:
    """The stabilized value of the increasing sequence x, 2x, 3x, ..."""
    require_partial_order(model)
    return model.inf(x)


def is_full(model: FiniteOrderedMonoid, x: int) -> bool:
    """True iff the ideal generated by x is the whole model."""
    require_partial_order(model)
    inf_x = model.inf(x)
    return all(model.le(y, inf_x) for y in model.elements())


def product_model(a: FiniteOrderedMonoid, b: FiniteOrderedMonoid,
                  name: str | None = None) -> FiniteOrderedMonoid:
    """Direct product: componentwise addition and order, pairs ordered
    lexicographically by factor indices."""
    pairs = [(i, j) for i in a.elements() for j in b.elements()]
    pos = {p: k for k, p in enumerate(pairs)}
    labels = tuple(f"({a.label(i)},{b.label(j)})" for i, j in pairs)
    add = tuple(
        tuple(pos[(a.plus(i1, i2), b.plus(j1, j2))] for (i2, j2) in pairs)
        for (i1, j1) in pairs
    )
    leq = tuple(
        tuple(a.le(i1, i2) and b.le(j1, j2) for (i2, j2) in pairs)
        for (i1, j1) in pairs
    )
    mode = "algebraic" if a.order_mode == b.order_mode == "algebraic" else "explicit"
    return FiniteOrderedMonoid(
        name=name or f"product({a.name},{b.name})",
        labels=labels,
        zero=pos[(a.zero, b.zero)],
        add=add,
        leq=leq,
        order_mode=mode,
        preorder_ok=a.preorder_ok or b.preorder_ok,
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

_FIELDS = {"name", "elements", "zero", "add", "order", "preorder_ok"}


def parse_model(data: bytes) -> ModelDocument:
    """Parse the UTF-8 JSON model format into a document.

    Syntax errors carry line/column; semantic problems (duplicate labels,
    missing fields) are reported with the offending value.
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"not valid UTF-8: {exc}")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno)
    if not isinstance(raw, dict):
        raise ParseError("top-level value must be an object")
    unknown = set(raw) - _FIELDS
    if unknown:
        raise ParseError(f"unknown fields: {sorted(unknown)}")
    for fieldname in ("name", "elements", "zero", "add", "order"):
        if fieldname not in raw:
            raise ParseError(f"missing field {fieldname!r}")
    name = raw["name"]
    elements = raw["elements"]
    if not isinstance(name, str):
        raise ParseError("'name' must be a string")
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise ParseError("'elements' must be a list of strings")
    dupes = {e for e in elements if elements.count(e) > 1}
    if dupes:
        raise ParseError(f"duplicate label {sorted(dupes)[0]!r} in 'elements'")
    if not isinstance(raw["zero"], str):
        raise ParseError("'zero' must be a string")
    add = raw["add"]
    if not isinstance(add, list) or not all(
        isinstance(row, list) and all(isinstance(v, str) for v in row) for row in add
    ):
        raise ParseError("'add' must be a table of labels")
    order = raw["order"]
    if order == "algebraic":
        order_value: str | tuple = "algebraic"
    elif isinstance(order, dict) and set(order) == {"pairs"}:
        pairs = order["pairs"]
        if not isinstance(pairs, list) or not all(
            isinstance(p, list) and len(p) == 2 and all(isinstance(s, str) for s in p)
            for p in pairs
        ):
            raise ParseError("'order.pairs' must be a list of [label, label] pairs")
        order_value = tuple((p[0], p[1]) for p in pairs)
    else:
        raise ParseError("'order' must be \"algebraic\" or {\"pairs\": [...]}")
    preorder_ok = raw.get("preorder_ok", False)
    if not isinstance(preorder_ok, bool):
        raise ParseError("'preorder_ok' must be a boolean")
    return ModelDocument(
        name=name,
        elements=tuple(elements),
        zero=raw["zero"],
        add=tuple(tuple(row) for row in add),
        order=order_value,
        preorder_ok=preorder_ok,
    )


def emit_model(doc: ModelDocument) -> bytes:
    """Deterministic emission: sorted keys, two-space indent, the element order
    of the document, "\\n" line endings, trailing newline."""
    obj: dict = {
        "name": doc.name,
        "elements": list(doc.elements),
        "zero": doc.zero,
        "add": [list(row) for row in doc.add],
    }
    if doc.order == "algebraic":
        obj["order"] = "algebraic"
    else:
        obj["order"] = {"pairs": [list(p) for p in doc.order]}
    if doc.preorder_ok:
        obj["preorder_ok"] = True
    return (json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")


def document_of(model: FiniteOrderedMonoid) -> ModelDocument:
    """Normal-form document: explicit orders list the full non-reflexive
    relation sorted by element index."""
    if model.order_mode == "algebraic":
        order: str | tuple = "algebraic"
    else:
        order = tuple(
            (model.label(i), model.label(j))
            for i in model.elements()
            for j in model.elements()
            if i != j and model.le(i, j)
        )
    return ModelDocument(
        name=model.name,
        elements=model.labels,
        zero=model.label(model.zero),
        add=tuple(tuple(model.label(v) for v in row) for row in model.add),
        order=order,
        preorder_ok=model.preorder_ok,
    )


def load_model(path) -> FiniteOrderedMonoid:
    with open(path, "rb") as fh:
        return validate(parse_model(fh.read()))


# ---------------------------------------------------------------------------
# Isomorphism and canonical forms
# ---------------------------------------------------------------------------

def _color_classes(model: FiniteOrderedMonoid) -> list[int]:
    """Iteratively refined label-invariant colors (degree and addition
    profiles), used to cut the bijection search down to class-respecting maps."""
    n = model.n
    add, leq = model.add, model.leq
    colors = []
    for e in range(n):
        down = sum(1 for y in range(n) if leq[y][e])
        up = sum(1 for y in range(n) if leq[e][y])
        # multiples are eventually periodic even without antisymmetry, so the
        # orbit size is a safe invariant for preorder models too
        orbit = {e}
        cur = e
        while True:
            cur = add[cur][e]
            if cur in orbit:
                break
            orbit.add(cur)
        colors.append((e == model.zero, down, up, add[e][e] == e, len(orbit)))
    colors = _rank(colors)
    for _ in range(n):
        sigs = []
        for e in range(n):
            profile = sorted(
                (colors[a], colors[add[e][a]], leq[e][a], leq[a][e]) for a in range(n)
            )
            sigs.append((colors[e], tuple(profile)))
        new = _rank(sigs)
        if new == colors:
            break
        colors = new
    return colors


def _rank(signatures) -> list[int]:
    order = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
    return [order[sig] for sig in signatures]


def _encode_under(model: FiniteOrderedMonoid, perm) -> tuple:
    """Encoding of the model after renaming element e to perm[e]."""
    n = model.n
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    add = tuple(
        perm[model.add[inv[i]][inv[j]]] for i in range(n) for j in range(n)
    )
    leq = tuple(model.leq[inv[i]][inv[j]] for i in range(n) for j in range(n))
    return (n, model.preorder_ok, add, leq)


def canonical_form(model: FiniteOrderedMonoid) -> tuple:
    """A representative encoding: equal across models iff they are isomorphic.

    Minimizes the (add, leq) encoding over all bijections compatible with the
    refined color classes; colors are isomorphism invariants, so restricting
    the search to them loses nothing.
    """
    colors = _color_classes(model)
    classes: dict[int, list[int]] = {}
    for e, c in enumerate(colors):
        classes.setdefault(c, []).append(e)
    ordered = [classes[c] for c in sorted(classes)]
    positions = []
    start = 0
    for cls in ordered:
        positions.append((start, cls))
        start += len(cls)
    best = None
    for choice in itertools.product(*[itertools.permutations(cls) for cls in ordered]):
        perm = [0] * model.n
        for (start, _cls), arranged in zip(positions, choice):
            for offset, e in enumerate(arranged):
                perm[e] = start + offset
        enc = _encode_under(model, perm)
        if best is None or enc < best:
            best = enc
    assert best is not None
    return best


def is_isomorphic(a: FiniteOrderedMonoid, b: FiniteOrderedMonoid) -> bool:
    """True iff some bijection preserves addition, zero, and the order."""
    if a.n != b.n or a.preorder_ok != b.preorder_ok:
        return False
    if sorted(_color_classes(a)) != sorted(_color_classes(b)):
        return False
    return canonical_form(a) == canonical_form(b)


def model_hash(model: FiniteOrderedMonoid) -> str:
    """Stable hash of the isomorphism class."""
    payload = repr(canonical_form(model)).encode("ascii")
    return hashlib.sha256(payload).hexdigest()[:16]
