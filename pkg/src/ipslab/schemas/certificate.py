"""JSON models for IPS certificates and the reports about them."""

from pydantic import BaseModel, Field

from ipslab.schemas.polynomial import PolynomialModel


class CertificateModel(BaseModel):
    """A self-contained linear certificate ``g * f + sum_j h_j (x_j^2 - x_j) = 1``."""

    field: str = Field(description="Field spec shared by all polynomials.")
    axiom: PolynomialModel
    g: PolynomialModel
    h: list[PolynomialModel] = Field(
        default_factory=list,
        description="One Boolean-axiom coefficient per axiom variable, in variable order.",
    )


class VerificationReport(BaseModel):
    ok: bool
    mode: str = Field(description="exact or randomized.")
    residual: PolynomialModel | None = Field(
        default=None,
        description="g*f + sum h_j (x_j^2 - x_j) - 1 when exact verification fails.",
    )
    trials: int = 0
    prime: int | None = None
    failed_trial: int | None = None


class FunctionalCheckReport(BaseModel):
    """What the extracted ``g = P(X, 1, 0)`` is, compared with the cube inverse."""

    verified: bool = Field(description="The certificate identity holds exactly.")
    multilinear: bool = Field(
        description="g is multilinear: a mult-IPS_Lin' certificate."
    )
    cube_points: int = Field(description="Cube points where g * f = 1 was checked.")
    cube_agrees: bool
    coefficientwise_equal: bool = Field(
        description="g equals the canonical multilinear inverse term by term."
    )
    g_terms: int
    g_degree: int | None = None


class ElemSymStructure(BaseModel):
    """The inverse of ``e_{n,d} - beta`` in the elementary symmetric basis."""

    n: int
    d: int
    beta: str
    alphas: list[str] = Field(description="alpha_0..alpha_n; alpha_0 is beta'.")
    beta_prime: str
    symmetric: bool
    pattern_ok: bool = Field(
        description="alpha_i = 0 for 1 <= i < d, alpha_i != 0 for i >= d and beta' != 0."
    )
