//! The non-commutative nabla operator `▼`, defined by
//! `▼H̃_α = t^{n(α)} q^{n(α')} H̃_α` and evaluated in every basis through its
//! Kronecker-structured form.

use crate::composition::{Composition, GammaOrdering};
use crate::error::{Error, Result};
use crate::ncsf::{Basis, Flavor, NcsfElement};
use crate::poly::LaurentPoly;
use crate::qt::weight;
use crate::structured::{OperatorKind, StructuredOperator};

/// The eigenvalue `t^{n(α)} q^{n(α')}` attached to `H̃_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NablaEigenvalue {
    pub alpha: Composition,
    pub value: LaurentPoly,
}

pub fn eigenvalue(alpha: &Composition, flavor: Flavor) -> NablaEigenvalue {
    let n = alpha.degree();
    let d = alpha.descents();
    let full = Composition::column(n).map(|c| c.descents()).unwrap_or(0);
    NablaEigenvalue { alpha: *alpha, value: weight(n, flavor, d, full & !d) }
}

/// The structured operator of a nabla formula. Only the nabla kinds of
/// [`OperatorKind`] are accepted.
pub fn nabla_structured(kind: OperatorKind, flavor: Flavor) -> Result<StructuredOperator> {
    match kind {
        OperatorKind::NablaDiagonal { .. }
        | OperatorKind::NablaRibbon { .. }
        | OperatorKind::NablaGammaSchur { .. }
        | OperatorKind::NablaModifiedHallLittlewood { .. }
        | OperatorKind::NablaGammaSchurToRibbon { .. } => {
            StructuredOperator::build(kind, flavor.family(kind.degree()))
        }
        other => Err(Error::UnsupportedBasis(format!("{other:?} is not a nabla operator"))),
    }
}

/// Coefficients transform with the transpose of the displayed matrix.
fn transform(
    e: &NcsfElement,
    kind: OperatorKind,
    out_basis: Basis,
) -> Result<NcsfElement> {
    let op = nabla_structured(kind, e.flavor())?;
    let out = op.apply_transpose(&e.to_dense()?)?;
    NcsfElement::from_dense(e.degree(), out_basis, e.family(), out)
}

/// `▼e` for `e` in the modified Macdonald basis (diagonal), the ribbon basis,
/// the `γ`-Schur basis at `1/t`, or the modified Hall-Littlewood basis. The
/// result stays in the input basis, except for modified Hall-Littlewood
/// input, which lands in the ribbon basis (the `γ = (n)` case of
/// [`nabla_in_level`]).
pub fn nabla(e: &NcsfElement) -> Result<NcsfElement> {
    let n = e.degree();
    match e.basis() {
        Basis::ModifiedMacdonald => {
            let mut out = NcsfElement::zero(n, Basis::ModifiedMacdonald, e.family())?;
            for (a, c) in e.terms() {
                out.add_term(*a, c.try_mul(&eigenvalue(a, e.flavor()).value)?)?;
            }
            Ok(out)
        }
        Basis::Ribbon => transform(e, OperatorKind::NablaRibbon { n }, Basis::Ribbon),
        Basis::GammaSchur { level, inverted_t: true } => {
            let level = *level;
            transform(e, OperatorKind::NablaGammaSchur { level }, e.basis().clone())
        }
        Basis::ModifiedHallLittlewood => {
            nabla_in_level(e, &Composition::row(n)?)?.with_basis(Basis::Ribbon)
        }
        other => Err(Error::UnsupportedBasis(other.name())),
    }
}

/// `▼e` for `e` in the modified Hall-Littlewood basis supported on `α ≤ γ`,
/// written in the `γ`-Schur basis at `1/t`.
pub fn nabla_in_level(e: &NcsfElement, gamma: &Composition) -> Result<NcsfElement> {
    if *e.basis() != Basis::ModifiedHallLittlewood {
        return Err(Error::WrongBasis {
            expected: Basis::ModifiedHallLittlewood.name(),
            found: e.basis().name(),
        });
    }
    let restricted = e.with_basis(Basis::gamma_schur_inverted(*gamma))?;
    transform(
        &restricted,
        OperatorKind::NablaModifiedHallLittlewood { level: *gamma },
        Basis::gamma_schur_inverted(*gamma),
    )
}

/// `▼e` for `e` in the `γ`-Schur basis at `1/t`, written in the ribbon basis.
pub fn nabla_to_ribbon(e: &NcsfElement) -> Result<NcsfElement> {
    let Basis::GammaSchur { level, inverted_t: true } = e.basis() else {
        return Err(Error::WrongBasis {
            expected: "gamma-schur at 1/t".into(),
            found: e.basis().name(),
        });
    };
    let op = nabla_structured(OperatorKind::NablaGammaSchurToRibbon { level: *level }, e.flavor())?;
    let out = op.apply_transpose(&e.to_dense()?)?;
    let ord = GammaOrdering::new(*level);
    let mut r = NcsfElement::zero(e.degree(), Basis::Ribbon, e.family())?;
    for (rank, c) in out.into_iter().enumerate() {
        if !c.is_zero() {
            r.add_term(ord.unrank_phi_gamma(rank as u64)?, c)?;
        }
    }
    Ok(r)
}

/// Splits `e` into a global sign and an element whose coefficients have only
/// positive terms. Zero gives sign `+1`.
pub fn sign_normalize(e: &NcsfElement) -> Result<(i8, NcsfElement)> {
    let mut sign: Option<i8> = None;
    for (_, c) in e.terms() {
        let s = c.sign().ok_or(Error::NotSignUniform)?;
        if sign.is_some_and(|prev| prev != s) {
            return Err(Error::NotSignUniform);
        }
        sign = Some(s);
    }
    let sign = sign.unwrap_or(1);
    Ok((sign, e.scale_int(i64::from(sign))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qt;

    fn c(s: &str) -> Composition {
        Composition::parse_label(s).unwrap()
    }

    fn el(s: &str) -> NcsfElement {
        NcsfElement::parse(s).unwrap()
    }

    #[test]
    fn eigenvalue_of_31() {
        assert_eq!(eigenvalue(&c("31"), Flavor::SingleParam).value, LaurentPoly::qt(5, 3));
    }

    #[test]
    fn nabla_on_ribbon_121() {
        let out = nabla(&NcsfElement::ribbon(c("121"))).unwrap();
        let expected = el("-q^2t^2 R_{22} - (q^3t^2 + q^2t^5) R_{211} - (q^5t^2 + q^2t^3) R_{112} \
             - (q^6t^2 + q^5t^5 + q^3t^3 + q^2t^6) R_{1111}");
        assert_eq!(out, expected);
        let (sign, pos) = sign_normalize(&out).unwrap();
        assert_eq!(sign, -1);
        assert_eq!(pos, expected.scale_int(-1));
    }

    #[test]
    fn nabla_on_modified_hall_littlewood_121() {
        let e = NcsfElement::basis_element(
            c("121"),
            Basis::ModifiedHallLittlewood,
            crate::poly::VarFamily::TwoParam,
        )
        .unwrap();
        let out = nabla(&e).unwrap();
        assert_eq!(
            out,
            el("-q^2t^6 R_{22} - q^2t^9 R_{211} - q^2t^7 R_{112} - q^2t^{10} R_{1111}")
        );
    }

    #[test]
    fn gamma_schur_to_ribbon_matches_ribbon_route() {
        let gamma = c("121");
        let alpha = c("1111");
        let e = NcsfElement::basis_element(
            alpha,
            Basis::gamma_schur_inverted(gamma),
            crate::poly::VarFamily::TwoParam,
        )
        .unwrap();
        let direct = nabla_to_ribbon(&e).unwrap();
        let via_ribbon = nabla(&qt::to_ribbon(&e).unwrap()).unwrap();
        assert_eq!(direct, via_ribbon);
    }

    #[test]
    fn mixed_signs_are_reported() {
        assert!(matches!(sign_normalize(&el("R_{11} - R_2")), Err(Error::NotSignUniform)));
        let zero = NcsfElement::zero(3, Basis::Ribbon, crate::poly::VarFamily::TwoParam).unwrap();
        assert_eq!(sign_normalize(&zero).unwrap().0, 1);
    }
}
