"""Isometries between W_f and the spaces c and c0."""

from fractions import Fraction

from cplanes.core_seq import ConvergentSeq, L1Functional
from cplanes.errors import (
    NotInC0Error,
    NotInHyperplaneError,
    NotOneComplementedError,
    WrongClassError,
)
from cplanes.hyperplane import HyperplaneClass, classify, member, one_complemented


def _inserted_index(f: L1Functional) -> int:
    indices = one_complemented(f)
    if not indices:
        raise NotOneComplementedError("W_f is not 1-complemented, no isometry onto c")
    return indices[0]


def embed_c_into_wf(f: L1Functional, x: ConvergentSeq) -> ConvergentSeq:
    """Map x in c isometrically into W_f.

    With j0 the smallest index >= 2 such that |f_{j0}| >= 1/2, the image is
    (x_1, ..., x_{j0-2}, alpha, x_{j0-1}, x_{j0}, ...) where alpha is the
    unique value putting the image in ker f.

    Raises:
        NotOneComplementedError: If W_f is not 1-complemented.
    """
    j0 = _inserted_index(f)
    head = x.coords(j0 - 2)
    rest = x.coords(max(len(x.prefix), j0 - 2))[j0 - 2 :]

    # f_1 x_0 + sum of f_{k+1} y_k over every k except the inserted slot
    partial = f.coeff(1) * x.tail
    partial += sum((f.coeff(k + 1) * v for k, v in enumerate(head, start=1)), Fraction(0))
    partial += sum(
        (f.coeff(k + 1) * x.coord(k - 1) for k in range(j0, f.support)), Fraction(0)
    )
    alpha = -partial / f.coeff(j0)

    return ConvergentSeq(tuple([*head, alpha, *rest]), x.tail)


def project_wf_to_c(f: L1Functional, y: ConvergentSeq) -> ConvergentSeq:
    """Invert ``embed_c_into_wf`` by deleting coordinate j0 - 1.

    Raises:
        NotOneComplementedError: If W_f is not 1-complemented.
        NotInHyperplaneError: If y is not in W_f.
    """
    j0 = _inserted_index(f)
    if not member(f, y):
        raise NotInHyperplaneError("Sequence does not lie in W_f")
    values = y.coords(max(len(y.prefix), j0 - 1))
    del values[j0 - 2]
    return ConvergentSeq(tuple(values), y.tail)


def iso_c0(f: L1Functional, x: ConvergentSeq) -> ConvergentSeq:
    """Identify W_f with c0 when f = +-e_1 (identity on null sequences).

    Raises:
        WrongClassError: If W_f is not the vanishing-limit hyperplane.
        NotInC0Error: If x does not converge to 0.
    """
    hyperplane_class = classify(f)
    if hyperplane_class is not HyperplaneClass.ISO_C0:
        raise WrongClassError(
            f"W_f is isometric to c0 only for f = +-e_1, class is "
            f"{hyperplane_class.value}",
            hyperplane_class=hyperplane_class.value,
        )
    if x.tail != 0:
        raise NotInC0Error(f"Sequence has nonzero limit {x.tail}", limit=str(x.tail))
    return x
