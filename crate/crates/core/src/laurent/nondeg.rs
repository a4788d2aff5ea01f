use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::extension::{search_common_zero, ExtField};
use super::face::{faces, restrict_to_face, Face};
use super::LaurentPoly;
use crate::algebra::{gcd_uni, resultant_y, BiPoly, Field, FieldElement, UniPoly};
use crate::error::{Error, Result};

/// Outcome of the non-degeneracy check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NondegVerdict {
    NonDegenerate,
    /// A concrete obstruction was found on `face`.
    Degenerate { face: Face, witness: String },
    /// Neither certificate applied; `residual` is the gcd of the resultants
    /// with the factor `x^m` removed (zero when a resultant vanished).
    Inconclusive { face: Face, residual: UniPoly },
}

impl NondegVerdict {
    pub fn status(&self) -> &'static str {
        match self {
            NondegVerdict::NonDegenerate => "nondegenerate",
            NondegVerdict::Degenerate { .. } => "degenerate",
            NondegVerdict::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        matches!(self, NondegVerdict::NonDegenerate)
    }

    fn severity(&self) -> u8 {
        match self {
            NondegVerdict::NonDegenerate => 0,
            NondegVerdict::Inconclusive { .. } => 1,
            NondegVerdict::Degenerate { .. } => 2,
        }
    }

    /// Convert a negative verdict into the matching refusal.
    pub fn into_result(self) -> Result<()> {
        match self {
            NondegVerdict::NonDegenerate => Ok(()),
            NondegVerdict::Degenerate { face, witness } => Err(Error::Degenerate(format!("{face}: {witness}"))),
            NondegVerdict::Inconclusive { face, residual } => {
                Err(Error::Inconclusive(format!("{face}: residual gcd {residual}")))
            }
        }
    }
}

impl fmt::Display for NondegVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NondegVerdict::NonDegenerate => f.write_str("nondegenerate"),
            NondegVerdict::Degenerate { face, witness } => write!(f, "degenerate on {face}: {witness}"),
            NondegVerdict::Inconclusive { face, residual } => {
                write!(f, "inconclusive on {face}: residual gcd {residual}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondegOptions {
    /// Over `F_p`, search `F_{p^m}` for `m ≤ max_extension_degree` when the
    /// certificate fails.
    pub extension_search: bool,
    pub max_extension_degree: usize,
    /// Upper bound on the number of point evaluations per extension degree.
    pub search_budget: u64,
}

impl Default for NondegOptions {
    fn default() -> Self {
        NondegOptions {
            extension_search: true,
            max_extension_degree: 3,
            search_budget: 4_000_000,
        }
    }
}

pub fn check_nondegenerate(f: &LaurentPoly) -> Result<NondegVerdict> {
    check_nondegenerate_with(f, &NondegOptions::default())
}

/// Check every face of the Newton polygon and report the worst verdict
/// (degenerate before inconclusive before non-degenerate).
pub fn check_nondegenerate_with(f: &LaurentPoly, opts: &NondegOptions) -> Result<NondegVerdict> {
    let poly = f.newton_polygon()?;
    if !poly.is_full() {
        return Err(Error::NotTwoDimensional(poly.dimension().as_i8()));
    }
    let mut worst = NondegVerdict::NonDegenerate;
    for face in faces(&poly) {
        let verdict = match face {
            // vertex coefficients are nonzero by construction
            Face::Vertex(_) => NondegVerdict::NonDegenerate,
            Face::Edge(..) => check_edge(f, face)?,
            Face::Full => check_full(f, opts)?,
        };
        if verdict.severity() > worst.severity() {
            worst = verdict;
            if worst.severity() == 2 {
                break;
            }
        }
    }
    Ok(worst)
}

fn check_edge(f: &LaurentPoly, face: Face) -> Result<NondegVerdict> {
    let g = restrict_to_face(f, &face)?
        .edge_poly
        .ok_or_else(|| Error::Invariant("edge restriction without edge polynomial".into()))?;
    let dg = g.derivative();
    if dg.is_zero() {
        return Ok(NondegVerdict::Degenerate {
            face,
            witness: format!("inseparable edge polynomial {g}"),
        });
    }
    let h = gcd_uni(&g, &dg)?;
    if h.is_constant() {
        return Ok(NondegVerdict::NonDegenerate);
    }
    Ok(NondegVerdict::Degenerate {
        face,
        witness: format!("edge polynomial {g} has the repeated factor {h}"),
    })
}

/// `gcd(Res_y(F, F_x), Res_y(F, F_y))` with zero roots stripped, or the zero
/// polynomial when one of the resultants vanishes identically.
fn residual(big: &BiPoly, fx: &BiPoly, fy: &BiPoly) -> Result<UniPoly> {
    let field = big.field();
    if fx.is_zero() || fy.is_zero() {
        return Ok(UniPoly::zero(field));
    }
    let r1 = resultant_y(big, fx)?;
    let r2 = resultant_y(big, fy)?;
    if r1.is_zero() || r2.is_zero() {
        return Ok(UniPoly::zero(field));
    }
    Ok(gcd_uni(&r1, &r2)?.strip_zero_roots())
}

fn check_full(f: &LaurentPoly, opts: &NondegOptions) -> Result<NondegVerdict> {
    let big = f.to_polynomial()?;
    let (fx, fy) = (big.derivative_x(), big.derivative_y());
    let h = residual(&big, &fx, &fy)?;
    if !h.is_zero() && h.is_constant() {
        return Ok(NondegVerdict::NonDegenerate);
    }
    // the same certificate with the roles of x and y exchanged
    let (sw, swx, swy) = (big.swap_variables(), fy.swap_variables(), fx.swap_variables());
    let h_swapped = residual(&sw, &swx, &swy)?;
    if !h_swapped.is_zero() && h_swapped.is_constant() {
        return Ok(NondegVerdict::NonDegenerate);
    }

    if let Some(w) = ground_field_witness(&big, &fx, &fy, &h)? {
        return Ok(NondegVerdict::Degenerate {
            face: Face::Full,
            witness: w,
        });
    }
    if let (Field::Prime(p), true) = (f.field(), opts.extension_search) {
        for m in 1..=opts.max_extension_degree.min(3) {
            let size = match p.checked_pow(m as u32) {
                Some(s) => s,
                None => break,
            };
            let cost = if h.is_zero() {
                size.saturating_mul(size)
            } else {
                size.saturating_mul(h.degree().unwrap_or(0) as u64 + 1)
            };
            if cost > opts.search_budget {
                break;
            }
            let ext = ExtField::new(p, m);
            let filter = (!h.is_zero()).then_some(&h);
            if let Some((x0, y0)) = search_common_zero(&ext, [&big, &fx, &fy], filter) {
                let witness = if m == 1 {
                    format!("common torus zero (x, y) = ({}, {}) of f, f_x, f_y", x0[0], y0[0])
                } else {
                    format!(
                        "common torus zero (x, y) = ({}, {}) of f, f_x, f_y in F_{p}^{m} = F_{p}[t]/({})",
                        ext.format(&x0),
                        ext.format(&y0),
                        UniPoly::from_i64s(Field::Prime(p), &ext.modulus().iter().map(|&c| c as i64).collect::<Vec<_>>())
                    )
                };
                return Ok(NondegVerdict::Degenerate {
                    face: Face::Full,
                    witness,
                });
            }
        }
    }
    let residual = if h.is_zero() || (!h_swapped.is_zero() && h_swapped.degree() < h.degree()) {
        h_swapped
    } else {
        h
    };
    Ok(NondegVerdict::Inconclusive {
        face: Face::Full,
        residual,
    })
}

/// Look for a common zero with coordinates in the coefficient field itself,
/// using the roots of the residual as `x`-candidates.
fn ground_field_witness(big: &BiPoly, fx: &BiPoly, fy: &BiPoly, h: &UniPoly) -> Result<Option<String>> {
    if h.is_zero() {
        return Ok(None);
    }
    for x0 in roots_in_field(h)? {
        let mut g = big.eval_x(&x0);
        for other in [fx, fy] {
            g = gcd_uni(&g, &other.eval_x(&x0))?;
        }
        if g.is_zero() || g.is_constant() {
            continue;
        }
        for y0 in roots_in_field(&g.strip_zero_roots())? {
            if [big, fx, fy].iter().all(|p| p.eval(&x0, &y0).is_zero()) {
                return Ok(Some(format!("common torus zero (x, y) = ({x0}, {y0}) of f, f_x, f_y")));
            }
        }
    }
    Ok(None)
}

/// Nonzero roots lying in the coefficient field. Over the rationals only
/// linear polynomials are solved (no factorization is attempted).
pub(crate) fn roots_in_field(h: &UniPoly) -> Result<Vec<FieldElement>> {
    let h = h.strip_zero_roots();
    if h.is_zero() || h.is_constant() {
        return Ok(Vec::new());
    }
    match h.field() {
        Field::Rationals => {
            // squarefree part, so that powers of a linear factor are solved too
            let sf = h.exact_div(&gcd_uni(&h, &h.derivative())?)?;
            if sf.degree() == Some(1) {
                let m = sf.monic();
                Ok(vec![-m.coeff(0)])
            } else {
                Ok(Vec::new())
            }
        }
        Field::Prime(p) => Ok(prime_field_roots(&h, p)?
            .into_iter()
            .map(|r| FieldElement::from_i64(Field::Prime(p), r as i64))
            .collect()),
    }
}

/// Distinct roots in `F_p`, sorted. The polynomial is first reduced to the
/// product of its linear factors by `gcd(h, t^p - t)`.
pub(crate) fn prime_field_roots(h: &UniPoly, p: u64) -> Result<Vec<u64>> {
    let field = Field::Prime(p);
    let h = h.monic();
    if h.is_zero() || h.is_constant() {
        return Ok(Vec::new());
    }
    let t = UniPoly::variable(field);
    let frob = t.pow_mod(p as u128, &h)?.sub(&t);
    let g = gcd_uni(&h, &frob)?;
    let mut roots = Vec::new();
    if g.degree() == Some(0) {
        return Ok(roots);
    }
    if p <= 1 << 16 {
        for v in 0..p {
            if g.eval(&FieldElement::from_i64(field, v as i64)).is_zero() {
                roots.push(v);
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        split_linear(&g, p, &mut rng, &mut roots)?;
        roots.sort_unstable();
    }
    Ok(roots)
}

/// Equal-degree splitting of a product of distinct linear factors (odd `p`).
fn split_linear(g: &UniPoly, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) -> Result<()> {
    let field = Field::Prime(p);
    match g.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            let m = g.monic();
            out.push((-m.coeff(0)).residue().expect("prime field"));
            return Ok(());
        }
        _ => {}
    }
    let one = UniPoly::one(field);
    loop {
        let a = FieldElement::from_i64(field, rng.gen_range(0..p) as i64);
        let base = UniPoly::variable(field).add(&UniPoly::constant(a));
        let w = base.pow_mod(((p - 1) / 2) as u128, g)?.sub(&one);
        let d = gcd_uni(g, &w)?;
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && Some(dd) < g.degree() {
            split_linear(&d, p, rng, out)?;
            split_linear(&g.exact_div(&d)?, p, rng, out)?;
            return Ok(());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_laurent;
    use crate::lattice::{LatticePoint, UnimodularMap};

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn smooth_line() {
        let f = parse_laurent("x + y + 1", q()).unwrap();
        assert_eq!(check_nondegenerate(&f).unwrap(), NondegVerdict::NonDegenerate);
    }

    #[test]
    fn double_root_on_edge() {
        let f = parse_laurent("x^2 + 2*x*y + y^2 + x + y", q()).unwrap();
        match check_nondegenerate(&f).unwrap() {
            NondegVerdict::Degenerate { face: Face::Edge(a, b), witness } => {
                let mut ends = [a, b];
                ends.sort();
                assert_eq!(ends, [LatticePoint::new(0, 2), LatticePoint::new(2, 0)]);
                assert!(witness.contains("repeated factor"), "{witness}");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn genus_fourteen_example() {
        let f = parse_laurent("13*x^6*y^5 - 6*x^6*y^4 + 2*x^3*y^5 + 4*x^3*y^4 + x^3 + 3*y^4", q()).unwrap();
        assert_eq!(check_nondegenerate(&f).unwrap(), NondegVerdict::NonDegenerate);
    }

    #[test]
    fn inseparable_edge() {
        // over F_3 the edge polynomial of x^3 + y^3 is 1 + t^3, whose derivative vanishes
        let f = parse_laurent("x^3 + y^3 + 1", Field::prime(3).unwrap()).unwrap();
        match check_nondegenerate(&f).unwrap() {
            NondegVerdict::Degenerate { witness, .. } => assert!(witness.contains("inseparable"), "{witness}"),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn interior_singularity_over_prime_field() {
        // (x - 1)^2 - (y - 1)^3 has a cusp at (1, 1), edges are fine
        let f7 = Field::prime(7).unwrap();
        let f = parse_laurent("x^2 - 2*x + 1 - y^3 + 3*y^2 - 3*y + 1", f7).unwrap();
        match check_nondegenerate(&f).unwrap() {
            NondegVerdict::Degenerate { face: Face::Full, witness } => {
                assert!(witness.contains("(1, 1)"), "{witness}")
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn interior_singularity_over_rationals() {
        // node at (1, 1): (x - 1)^2 - (y - 1)^2 (y + 1)
        let f = parse_laurent("x^2 - 2*x + 1 - y^3 + y^2 + y - 1", q()).unwrap();
        match check_nondegenerate(&f).unwrap() {
            NondegVerdict::Degenerate { face: Face::Full, .. } => {}
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn singularity_in_quadratic_extension() {
        // (y - 1)^2 = (x^2 + 1)^2 (x + 2) over F_7 is singular at x = ±i, outside F_7
        let f7 = Field::prime(7).unwrap();
        let f = parse_laurent("y^2 - 2*y - x^5 - 2*x^4 - 2*x^3 - 4*x^2 - x - 1", f7).unwrap();
        let verdict = check_nondegenerate(&f).unwrap();
        match &verdict {
            NondegVerdict::Degenerate { face: Face::Full, witness } => assert!(witness.contains("F_7^2"), "{witness}"),
            other => panic!("unexpected {other}"),
        }
        let no_search = NondegOptions {
            extension_search: false,
            ..NondegOptions::default()
        };
        assert!(matches!(
            check_nondegenerate_with(&f, &no_search).unwrap(),
            NondegVerdict::Inconclusive { .. }
        ));
    }

    #[test]
    fn verdict_invariant_under_monomial_shift_and_substitution() {
        let f = parse_laurent("13*x^6*y^5 - 6*x^6*y^4 + 2*x^3*y^5 + 4*x^3*y^4 + x^3 + 3*y^4", q()).unwrap();
        let shifted = f.shift(LatticePoint::new(-4, 7));
        assert!(check_nondegenerate(&shifted).unwrap().is_nondegenerate());
        let map = UnimodularMap::new(2, 1, 1, 1, LatticePoint::new(0, -3)).unwrap();
        assert!(check_nondegenerate(&f.transform(&map)).unwrap().is_nondegenerate());

        let bad = parse_laurent("x^2 + 2*x*y + y^2 + x + y", q()).unwrap();
        assert_eq!(check_nondegenerate(&bad.transform(&map)).unwrap().status(), "degenerate");
    }

    #[test]
    fn prime_field_root_finding() {
        for p in [7u64, 1_000_003] {
            let f = Field::Prime(p);
            // (t - 2)(t - 5)(t^2 + 1) with t^2 + 1 irreducible when p ≡ 3 mod 4
            let h = UniPoly::from_i64s(f, &[10, -7, 1]).mul(&UniPoly::from_i64s(f, &[1, 0, 1]));
            assert_eq!(prime_field_roots(&h, p).unwrap(), vec![2, 5]);
        }
    }

    #[test]
    fn lower_dimensional_input_rejected() {
        let f = parse_laurent("x + x^2 + 1", q()).unwrap();
        assert_eq!(check_nondegenerate(&f), Err(Error::NotTwoDimensional(1)));
    }
}
