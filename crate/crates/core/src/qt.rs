//! Hall-Littlewood, Macdonald and `γ`-ribbon Schur bases, their ribbon
//! expansions and the changes of basis between them.
//!
//! Every coefficient here is a product over descent positions: a position
//! `i` contributes `t^i` (or `t_i`) and `q^{n-i}` (or `q_{n-i}`), so all
//! expansions are built from two bitmasks through [`weight`].

use crate::composition::{check_basis_degree, submasks, Composition};
use crate::error::{Error, Result};
use crate::ncsf::{Basis, Flavor, NcsfElement};
use crate::poly::{Assignment, LaurentPoly, Param, Var};

/// `Π_{i ∈ t_mask} t^i · Π_{i ∈ q_mask} q^{n-i}` in the family of `flavor`.
pub fn weight(n: usize, flavor: Flavor, t_mask: u64, q_mask: u64) -> LaurentPoly {
    let family = flavor.family(n);
    let positions = |mask: u64| (1..n).filter(move |i| mask >> (i - 1) & 1 == 1);
    match flavor {
        Flavor::SingleParam => {
            let t: usize = positions(t_mask).sum();
            let q: usize = positions(q_mask).map(|i| n - i).sum();
            LaurentPoly::qt(q as i32, t as i32)
        }
        Flavor::Multivariate => {
            let vars: Vec<(Var, i32)> = positions(t_mask)
                .map(|i| (Var::Ti(i), 1))
                .chain(positions(q_mask).map(|i| (Var::Qi(n - i), 1)))
                .collect();
            LaurentPoly::monomial(family, &vars, 1).expect("indices lie in 1..n")
        }
    }
}

fn ribbon_sum(
    n: usize,
    flavor: Flavor,
    terms: impl IntoIterator<Item = (u64, LaurentPoly)>,
) -> Result<NcsfElement> {
    NcsfElement::from_terms(
        n,
        Basis::Ribbon,
        flavor.family(n),
        terms
            .into_iter()
            .map(|(mask, c)| (Composition::from_descents(n, mask).expect("mask within degree"), c)),
    )
}

fn require_refines(alpha: &Composition, gamma: &Composition) -> Result<()> {
    if !alpha.refines(gamma)? {
        return Err(Error::NotRefining { alpha: *alpha, gamma: *gamma });
    }
    Ok(())
}

fn full(n: usize) -> u64 {
    Composition::column(n).map(|c| c.descents()).unwrap_or(0)
}

/// `H_α(A;t) = Σ_{β ≥ α} t^{c(α,β^c)} R_β`.
pub fn hall_littlewood(alpha: &Composition, flavor: Flavor) -> Result<NcsfElement> {
    let n = alpha.degree();
    let d = alpha.descents();
    ribbon_sum(n, flavor, submasks(d).map(|b| (b, weight(n, flavor, d & !b, 0))))
}

/// `H̃_α(A;t) = Σ_{β ≥ α} t^{c(α,β)} R_β`, the modified Macdonald function at `q = 0`.
pub fn modified_hall_littlewood(alpha: &Composition, flavor: Flavor) -> Result<NcsfElement> {
    let n = alpha.degree();
    let d = alpha.descents();
    ribbon_sum(n, flavor, submasks(d).map(|b| (b, weight(n, flavor, b, 0))))
}

/// `H_α(A;q,t) = Σ_β t^{c(α,β^c)} q^{c(α',⃖β)} R_β`.
pub fn macdonald(alpha: &Composition, flavor: Flavor) -> Result<NcsfElement> {
    let n = alpha.degree();
    check_basis_degree(n)?;
    let d = alpha.descents();
    ribbon_sum(n, flavor, (0..=full(n)).map(|b| (b, weight(n, flavor, d & !b, b & !d))))
}

/// `H̃_α(A;q,t) = Σ_β t^{c(α,β)} q^{c(α',⃖β)} R_β = t^{n(α)} H_α(A;q,1/t)`.
pub fn modified_macdonald(alpha: &Composition, flavor: Flavor) -> Result<NcsfElement> {
    let n = alpha.degree();
    check_basis_degree(n)?;
    let d = alpha.descents();
    ribbon_sum(n, flavor, (0..=full(n)).map(|b| (b, weight(n, flavor, d & b, b & !d))))
}

/// `R^{(γ)}_α(A;t) = Σ t^{c(α,β^c)} R_β` over `D(α)∖D(γ) ⊆ D(β) ⊆ D(α)`.
pub fn gamma_schur(gamma: &Composition, alpha: &Composition, flavor: Flavor) -> Result<NcsfElement> {
    require_refines(alpha, gamma)?;
    let n = alpha.degree();
    let d = alpha.descents();
    let forced = d & !gamma.descents();
    ribbon_sum(
        n,
        flavor,
        submasks(d & gamma.descents()).map(|s| (forced | s, weight(n, flavor, d & !(forced | s), 0))),
    )
}

/// `R^{(γ)}_α(A;1/t)`.
pub fn gamma_schur_inverted(
    gamma: &Composition,
    alpha: &Composition,
    flavor: Flavor,
) -> Result<NcsfElement> {
    Ok(gamma_schur(gamma, alpha, flavor)?.invert_t())
}

/// Ribbon expansion of a single basis element.
pub fn expand_basis_element(
    basis: &Basis,
    alpha: &Composition,
    flavor: Flavor,
) -> Result<NcsfElement> {
    let n = alpha.degree();
    match basis {
        Basis::Ribbon => NcsfElement::basis_element(*alpha, Basis::Ribbon, flavor.family(n)),
        Basis::Homogeneous => {
            NcsfElement::basis_element(*alpha, Basis::Homogeneous, flavor.family(n))?.h_to_ribbon()
        }
        Basis::HallLittlewood => hall_littlewood(alpha, flavor),
        Basis::ModifiedHallLittlewood => modified_hall_littlewood(alpha, flavor),
        Basis::Macdonald => macdonald(alpha, flavor),
        Basis::ModifiedMacdonald => modified_macdonald(alpha, flavor),
        Basis::GammaSchur { level, inverted_t: false } => gamma_schur(level, alpha, flavor),
        Basis::GammaSchur { level, inverted_t: true } => gamma_schur_inverted(level, alpha, flavor),
    }
}

/// Rewrites any element in the ribbon basis.
pub fn to_ribbon(e: &NcsfElement) -> Result<NcsfElement> {
    if *e.basis() == Basis::Ribbon {
        return Ok(e.clone());
    }
    let mut out = NcsfElement::zero(e.degree(), Basis::Ribbon, e.family())?;
    for (alpha, c) in e.terms() {
        out = out.try_add(&expand_basis_element(e.basis(), alpha, e.flavor())?.scale(c)?)?;
    }
    Ok(out)
}

/// Rewrites a ribbon element in a triangular basis (homogeneous, either
/// Hall-Littlewood, or `γ`-Schur) by peeling leading terms off from the
/// finest composition down. The Macdonald bases are not triangular and are
/// rejected; an element outside the span of a `γ`-Schur basis fails with
/// [`Error::NotRefining`].
pub fn from_ribbon(e: &NcsfElement, target: &Basis) -> Result<NcsfElement> {
    if *e.basis() != Basis::Ribbon {
        return Err(Error::WrongBasis { expected: Basis::Ribbon.name(), found: e.basis().name() });
    }
    if matches!(target, Basis::Macdonald | Basis::ModifiedMacdonald) {
        return Err(Error::UnsupportedBasis(target.name()));
    }
    let n = e.degree();
    let flavor = e.flavor();
    let mut residual = e.clone();
    let mut out = NcsfElement::zero(n, target.clone(), e.family())?;
    while let Some(lead) =
        residual.support().max_by_key(|a| (a.descents().count_ones(), a.descents()))
    {
        let expansion = expand_basis_element(target, &lead, flavor)?;
        let pivot = expansion.coeff(&lead).expect("leading coefficient is nonzero");
        let c = residual.coeff(&lead).expect("lead is in the support").div_unit(pivot)?;
        residual = residual.try_sub(&expansion.scale(&c)?)?;
        out.add_term(lead, c)?;
    }
    Ok(out)
}

/// `H_α(A;t) = Σ_{α ≤ β ≤ γ} t^{c(α,β^c)} R^{(γ)}_β`.
pub fn hl_to_gamma_schur(
    gamma: &Composition,
    alpha: &Composition,
    flavor: Flavor,
) -> Result<NcsfElement> {
    require_refines(alpha, gamma)?;
    let n = alpha.degree();
    let d = alpha.descents();
    let g = gamma.descents();
    NcsfElement::from_terms(
        n,
        Basis::gamma_schur(*gamma),
        flavor.family(n),
        submasks(d & !g).map(|s| {
            let b = d & !s;
            (Composition::from_descents(n, b).expect("submask"), weight(n, flavor, s, 0))
        }),
    )
}

/// `R^{(γ)}_α(A;t) = Σ_{α ≤ β ≤ γ} (-1)^{l(α)-l(β)} t^{c(α,β^c)} H_β(A;t)`.
pub fn gamma_schur_to_hl(
    gamma: &Composition,
    alpha: &Composition,
    flavor: Flavor,
) -> Result<NcsfElement> {
    require_refines(alpha, gamma)?;
    let n = alpha.degree();
    let d = alpha.descents();
    let g = gamma.descents();
    NcsfElement::from_terms(
        n,
        Basis::HallLittlewood,
        flavor.family(n),
        submasks(d & !g).map(|s| {
            let sign = if s.count_ones() % 2 == 0 { 1 } else { -1 };
            let b = d & !s;
            (Composition::from_descents(n, b).expect("submask"), weight(n, flavor, s, 0).scale(sign))
        }),
    )
}

/// Branching from level `γ` to a coarser level `γ̃`:
/// `R^{(γ)}_α = Σ t^{c(α,β^c)} R^{(γ̃)}_β` over `D(α)∖D(β) ⊆ D(γ)∖D(γ̃)`.
pub fn branch(
    gamma: &Composition,
    gamma_tilde: &Composition,
    alpha: &Composition,
    flavor: Flavor,
) -> Result<NcsfElement> {
    if !gamma.refines(gamma_tilde)? {
        return Err(Error::LevelOrder { finer: *gamma, coarser: *gamma_tilde });
    }
    require_refines(alpha, gamma)?;
    let n = alpha.degree();
    let d = alpha.descents();
    let free = gamma.descents() & !gamma_tilde.descents();
    NcsfElement::from_terms(
        n,
        Basis::gamma_schur(*gamma_tilde),
        flavor.family(n),
        submasks(free).map(|s| {
            (Composition::from_descents(n, d & !s).expect("submask"), weight(n, flavor, s, 0))
        }),
    )
}

/// The Macdonald function `H_α` (or `H̃_α` when `modified`) in the
/// `γ`-Schur basis, for `α ≤ γ`:
///
/// `H_α = Σ_{β ≤ γ} t^{c(α,β^c)} q^{c(α',⃖β)} R^{(γ)}_β(A;t)` and
/// `H̃_α = Σ_{β ≤ γ} t^{c(α,β)} q^{c(α',⃖β)} R^{(γ)}_β(A;1/t)`.
pub fn macdonald_in_gamma_schur(
    gamma: &Composition,
    alpha: &Composition,
    modified: bool,
    flavor: Flavor,
) -> Result<NcsfElement> {
    require_refines(alpha, gamma)?;
    let n = alpha.degree();
    check_basis_degree(n)?;
    let d = alpha.descents();
    let g = gamma.descents();
    let basis = Basis::GammaSchur { level: *gamma, inverted_t: modified };
    let terms = submasks(full(n) & !g).map(|extra| {
        let b = g | extra;
        let t_mask = if modified { d & b } else { d & !b };
        (Composition::from_descents(n, b).expect("mask within degree"), weight(n, flavor, t_mask, b & !d))
    });
    NcsfElement::from_terms(n, basis, flavor.family(n), terms)
}

/// `ω^c(R^{(γ)}_α(A;t)) = prefactor · R^{(γ)}_ζ(A;1/t)` with prefactor
/// `t^{n(γ)}` and `D(ζ) = (D(γ^c) ∖ D(α)) ∪ D(γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaCImage {
    pub zeta: Composition,
    pub prefactor: LaurentPoly,
    /// `R^{(γ)}_ζ(A;1/t)` as a one-term element.
    pub element: NcsfElement,
}

impl OmegaCImage {
    pub fn to_ribbon(&self) -> Result<NcsfElement> {
        to_ribbon(&self.element)?.scale(&self.prefactor)
    }
}

pub fn omega_c_on_gamma_schur(
    gamma: &Composition,
    alpha: &Composition,
    flavor: Flavor,
) -> Result<OmegaCImage> {
    require_refines(alpha, gamma)?;
    let n = alpha.degree();
    let g = gamma.descents();
    let zeta = Composition::from_descents(n, (full(n) & !g & !alpha.descents()) | g)?;
    require_refines(&zeta, gamma)?;
    Ok(OmegaCImage {
        zeta,
        prefactor: weight(n, flavor, g, 0),
        element: NcsfElement::basis_element(
            zeta,
            Basis::gamma_schur_inverted(*gamma),
            flavor.family(n),
        )?,
    })
}

/// `←ω(R^{(γ)}_α(A;t_1,…,t_{n-1})) = R^{(⃖γ)}_{⃖α}(A;t_{n-1},…,t_1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaRevImage {
    pub level: Composition,
    pub index: Composition,
    pub flavor: Flavor,
}

impl OmegaRevImage {
    /// Ribbon expansion: multivariate with the variables reversed, or the
    /// single-parameter function at `t = 1`.
    pub fn to_ribbon(&self) -> Result<NcsfElement> {
        let e = gamma_schur(&self.level, &self.index, self.flavor)?;
        match self.flavor {
            Flavor::Multivariate => {
                let mut out = NcsfElement::zero(e.degree(), Basis::Ribbon, e.family())?;
                for (a, c) in e.terms() {
                    out.add_term(*a, c.reverse_indices())?;
                }
                Ok(out)
            }
            Flavor::SingleParam => e.specialize(&[Assignment::One(Param::T)]),
        }
    }
}

/// The reverse involution on `γ`-Schur functions. The identity holds for
/// multivariate coefficients, and for single-parameter ones only at `t = 1`,
/// which the caller must request with `at_t_one`.
pub fn omega_rev_on_gamma_schur(
    gamma: &Composition,
    alpha: &Composition,
    flavor: Flavor,
    at_t_one: bool,
) -> Result<OmegaRevImage> {
    require_refines(alpha, gamma)?;
    if flavor == Flavor::SingleParam && !at_t_one {
        return Err(Error::UnsupportedSpecialization(
            "the reverse involution on single-parameter gamma-Schur functions needs t = 1".into(),
        ));
    }
    Ok(OmegaRevImage { level: gamma.reverse(), index: alpha.reverse(), flavor })
}
