"""Homology of finite chain complexes given by boundary matrices."""

from dataclasses import dataclass, field

from .linalg import Echelon, kernel_basis, rank

__all__ = ["HomologyReport", "complex_homology"]


@dataclass
class HomologyReport:
    """Per-degree dimensions and, optionally, cycle representatives."""

    label: str
    dims: dict
    representatives: dict = field(default_factory=dict)
    prim_dims: dict = None

    def dims_tuple(self):
        return tuple(self.dims[n] for n in sorted(self.dims))

    def to_json(self):
        out = {"label": self.label, "dims": {str(n): self.dims[n] for n in sorted(self.dims)}}
        if self.prim_dims is not None:
            out["prim_dims"] = {str(n): self.prim_dims[n] for n in sorted(self.prim_dims)}
        return out

    @classmethod
    def from_json(cls, data):
        dims = {int(n): int(d) for n, d in data["dims"].items()}
        prim = data.get("prim_dims")
        if prim is not None:
            prim = {int(n): int(d) for n, d in prim.items()}
        return cls(data["label"], dims, prim_dims=prim)


def complex_homology(label, space_dims, boundary, cap, representatives=False, check=True):
    """Homology in degrees ``0..cap`` of the complex ``C_n --boundary(n)--> C_{n-1}``.

    ``space_dims[n]`` must be given for ``0 <= n <= cap + 1``; ``boundary(n)``
    is called for ``1 <= n <= cap + 1``.
    """
    mats = {n: boundary(n) for n in range(1, cap + 2)}
    for n, m in mats.items():
        if m.shape != (space_dims[n - 1], space_dims[n]):
            raise ValueError(f"boundary {n} has shape {m.shape}")
    if check:
        for n in range(1, cap + 1):
            if not (mats[n] @ mats[n + 1]).is_zero():
                raise ArithmeticError(f"{label}: boundary {n} composed with {n + 1} is nonzero")
    ranks = {n: rank(m) for n, m in mats.items()}
    ranks[0] = 0
    dims = {n: space_dims[n] - ranks[n] - ranks[n + 1] for n in range(cap + 1)}
    reps = {}
    if representatives:
        for n in range(cap + 1):
            reps[n] = homology_representatives(
                mats.get(n), mats[n + 1], space_dims[n], dims[n]
            )
    return HomologyReport(label, dims, reps)


def homology_representatives(d_out, d_in, size, count):
    """Cycles of ``d_out`` that form a basis modulo the image of ``d_in``."""
    if d_out is None:
        cycles = [tuple(int(i == j) for j in range(size)) for i in range(size)]
    else:
        cycles = kernel_basis(d_out)
    ech = Echelon()
    for _, col in d_in.columns():
        ech.add(col)
    reps = []
    for z in cycles:
        if len(reps) == count:
            break
        if ech.add({i: x for i, x in enumerate(z) if x}) is None:
            reps.append(z)
    if len(reps) != count:
        raise ArithmeticError("representative count does not match the homology dimension")
    return reps
