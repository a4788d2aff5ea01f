//! Minimal generators of the canonical ideal of a curve cut out by a
//! non-degenerate Laurent polynomial, assembled from the toric ideal of the
//! interior hull and the forms `F_{d,w}`.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::laurent::{check_nondegenerate, LaurentPoly, NondegVerdict};
use crate::lattice::{unimodular_equivalent, Dimension, LatticePoint, LatticePolygon};
use crate::toric::{binomial, exponent_sum, search_multiset, toric_ideal, MonomialForm, ToricGenerators};

/// Which branch of the generator assembly applies, decided by the interior hull.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CanonicalCase {
    /// `Δ1 ≅ Σ`: a smooth plane quartic.
    SigmaQuartic,
    /// `Δ1 ≅ Υ`: genus 4, a cubic surface section by a quadric.
    UpsilonGenus4,
    /// `Δ1 ≅ 2Σ`: a smooth plane quintic.
    TwoSigmaQuintic,
    /// `Δ2 ≠ ∅`: generated by quadrics.
    CliffordGE2,
    /// Everything else: quadrics and `g − 3` cubics.
    Trigonal,
}

impl CanonicalCase {
    pub fn tag(self) -> &'static str {
        match self {
            CanonicalCase::SigmaQuartic => "sigma_quartic",
            CanonicalCase::UpsilonGenus4 => "upsilon_genus4",
            CanonicalCase::TwoSigmaQuintic => "two_sigma_quintic",
            CanonicalCase::CliffordGE2 => "clifford_ge2",
            CanonicalCase::Trigonal => "trigonal",
        }
    }

    /// Degree of the forms `F_{d,w}` used in this case.
    pub fn form_degree(self) -> usize {
        match self {
            CanonicalCase::SigmaQuartic => 4,
            CanonicalCase::UpsilonGenus4 | CanonicalCase::CliffordGE2 => 2,
            CanonicalCase::TwoSigmaQuintic | CanonicalCase::Trigonal => 3,
        }
    }
}

impl fmt::Display for CanonicalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug)]
pub struct CurveContext {
    pub f: LaurentPoly,
    pub delta: LatticePolygon,
    pub delta1: LatticePolygon,
    pub delta2: LatticePolygon,
    pub genus: usize,
    pub case: CanonicalCase,
}

impl CurveContext {
    pub fn field(&self) -> Field {
        self.f.field()
    }

    /// The variable index set `Δ1 ∩ ℤ²`.
    pub fn ambient(&self) -> Arc<[LatticePoint]> {
        self.delta1.lattice_points().into()
    }
}

/// Genus `#(Δ^(1) ∩ ℤ²)` of the curve, i.e. the number of interior lattice
/// points of the Newton polygon.
pub fn genus(f: &LaurentPoly) -> Result<usize> {
    Ok(f.newton_polygon()?.interior_count())
}

pub fn curve_context(f: &LaurentPoly) -> Result<CurveContext> {
    let delta = f.newton_polygon()?;
    if !delta.is_full() {
        return Err(Error::NotTwoDimensional(delta.dimension().as_i8()));
    }
    let delta1 = delta.interior_hull();
    let genus = delta1.lattice_point_count();
    match delta1.dimension() {
        Dimension::Full => {}
        Dimension::Segment => return Err(Error::Hyperelliptic { genus }),
        dim => {
            return Err(Error::GenusTooSmall {
                genus,
                dimension: dim.as_i8(),
            })
        }
    }
    if genus < 3 {
        return Err(Error::GenusTooSmall { genus, dimension: 2 });
    }
    let delta2 = delta1.interior_hull();
    let case = if unimodular_equivalent(&delta1, &LatticePolygon::sigma()).is_some() {
        CanonicalCase::SigmaQuartic
    } else if unimodular_equivalent(&delta1, &LatticePolygon::upsilon()).is_some() {
        CanonicalCase::UpsilonGenus4
    } else if unimodular_equivalent(&delta1, &LatticePolygon::sigma().dilate(2)).is_some() {
        CanonicalCase::TwoSigmaQuintic
    } else if delta2.dimension() != Dimension::Empty {
        CanonicalCase::CliffordGE2
    } else {
        CanonicalCase::Trigonal
    };
    Ok(CurveContext {
        f: f.clone(),
        delta,
        delta1,
        delta2,
        genus,
        case,
    })
}

/// A point `num / den` of `(1/den)·ℤ²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScaledPoint {
    pub num: LatticePoint,
    pub den: i64,
}

impl ScaledPoint {
    pub fn new(num: LatticePoint, den: i64) -> Self {
        assert!(den > 0, "denominator must be positive");
        ScaledPoint { num, den }
    }
}

impl fmt::Display for ScaledPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let frac = |n: i64| {
            let g = num_integer::gcd(n, self.den);
            let (a, b) = (n / g, self.den / g);
            if b == 1 {
                a.to_string()
            } else {
                format!("{a}/{b}")
            }
        };
        write!(f, "({},{})", frac(self.num.x), frac(self.num.y))
    }
}

/// `W_d`: interior lattice points of `(d−1)·Δ1`, scaled by `1/(d−1)`.
pub fn scaled_interior_points(delta1: &LatticePolygon, d: usize) -> Vec<ScaledPoint> {
    assert!(d >= 2, "W_d needs d >= 2");
    let k = d as i64 - 1;
    delta1
        .dilate(k)
        .interior_points()
        .into_iter()
        .map(|p| ScaledPoint::new(p, k))
        .collect()
}

/// Lexicographically least multiset `v_1 ≤ … ≤ v_d` of lattice points of
/// `Δ1` with `v_1 + … + v_d = point + (d−1)·w`.
pub fn decompose(point: LatticePoint, w: ScaledPoint, d: usize, delta1: &LatticePolygon) -> Result<Vec<LatticePoint>> {
    let dilates: Vec<_> = (1..=d as i64).map(|k| delta1.dilate(k)).collect();
    decompose_with(point, w, d, delta1.lattice_points(), &dilates)
}

fn decompose_with(
    point: LatticePoint,
    w: ScaledPoint,
    d: usize,
    points: &[LatticePoint],
    dilates: &[LatticePolygon],
) -> Result<Vec<LatticePoint>> {
    if w.den != d as i64 - 1 {
        return Err(Error::Invariant(format!("{w} is not a point of W_{d}")));
    }
    let target = point + w.num;
    let mut found = None;
    let mut cur = Vec::with_capacity(d);
    search_multiset(points, dilates, d, 0, target, &mut cur, &mut |m| {
        found = Some(m.to_vec());
        true
    });
    found.ok_or_else(|| Error::DecompositionFailed {
        target: target.to_string(),
        count: d,
    })
}

/// `F_{d,w} = Σ c_{i,j} X_{v_1}···X_{v_d}` over the support of `f`, checked
/// against `χ_d(F_{d,w}) = x^a y^b · f` with `(a, b) = (d−1)·w`.
pub fn build_f(w: ScaledPoint, d: usize, ctx: &CurveContext) -> Result<MonomialForm> {
    let dilates: Vec<_> = (1..=d as i64).map(|k| ctx.delta1.dilate(k)).collect();
    let points = ctx.delta1.lattice_points();
    let mut form = MonomialForm::zero(ctx.field(), d, ctx.ambient());
    for (e, c) in ctx.f.terms() {
        let m = decompose_with(e, w, d, points, &dilates)?;
        debug_assert_eq!(exponent_sum(&m), e + w.num);
        form.add_term(m, c.clone())?;
    }
    if form.chi() != ctx.f.shift(w.num) {
        return Err(Error::Invariant(format!("chi identity fails for F_{{{d},{w}}}")));
    }
    Ok(form)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalCounts {
    pub quadrics: usize,
    pub cubics: usize,
    pub quartics: usize,
}

#[derive(Clone, Debug)]
pub struct CanonicalGenerators {
    pub context: CurveContext,
    pub toric: ToricGenerators,
    /// The forms `F_{d,w}`, sorted by `w`.
    pub extra: Vec<(ScaledPoint, MonomialForm)>,
    pub counts: CanonicalCounts,
    /// Every `F_{d,w}` passed the `χ_d` identity.
    pub chi_identity_checked: bool,
}

impl CanonicalGenerators {
    pub fn case(&self) -> CanonicalCase {
        self.context.case
    }

    pub fn genus(&self) -> usize {
        self.context.genus
    }

    /// All generators, toric ones first, then the `F_{d,w}`.
    pub fn all(&self) -> Vec<MonomialForm> {
        self.toric
            .all()
            .cloned()
            .chain(self.extra.iter().map(|(_, f)| f.clone()))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CanonicalOptions {
    /// Proceed when the non-degeneracy check is inconclusive. Degenerate
    /// input is refused regardless.
    pub assume_nondegenerate: bool,
}

pub fn canonical_ideal(f: &LaurentPoly) -> Result<CanonicalGenerators> {
    canonical_ideal_with(f, CanonicalOptions::default())
}

pub fn canonical_ideal_with(f: &LaurentPoly, opts: CanonicalOptions) -> Result<CanonicalGenerators> {
    let ctx = curve_context(f)?;
    match check_nondegenerate(f)? {
        NondegVerdict::NonDegenerate => {}
        v @ NondegVerdict::Degenerate { .. } => v.into_result()?,
        v @ NondegVerdict::Inconclusive { .. } => {
            if !opts.assume_nondegenerate {
                v.into_result()?;
            }
        }
    }
    assemble(ctx)
}

/// Build the generators for a context whose polynomial is taken to be
/// non-degenerate.
pub fn assemble(ctx: CurveContext) -> Result<CanonicalGenerators> {
    let field = ctx.field();
    let g = ctx.genus;
    let toric = toric_ideal(&ctx.delta1, field)?;
    let d = ctx.case.form_degree();
    let ws = scaled_interior_points(&ctx.delta1, d);
    let forms: Vec<MonomialForm> = ws.par_iter().map(|&w| build_f(w, d, &ctx)).collect::<Result<_>>()?;
    let extra: Vec<_> = ws.into_iter().zip(forms).collect();

    let mut counts = CanonicalCounts {
        quadrics: toric.quadrics.len(),
        cubics: toric.cubics.len(),
        quartics: 0,
    };
    match d {
        2 => counts.quadrics += extra.len(),
        3 => counts.cubics += extra.len(),
        _ => counts.quartics += extra.len(),
    }

    let petri_quadrics = (binomial(g as u64 - 2, 2)) as usize;
    let fail = |what: String| Err(Error::Invariant(format!("{} case: {what}", ctx.case)));
    match ctx.case {
        CanonicalCase::SigmaQuartic => {
            if toric.all().count() != 0 || extra.len() != 1 {
                return fail(format!("{} toric generators and {} quartics", toric.all().count(), extra.len()));
            }
        }
        CanonicalCase::UpsilonGenus4 => {
            if !toric.quadrics.is_empty() || toric.cubics.len() != 1 || extra.len() != 1 {
                return fail("expected one toric cubic and one quadric".into());
            }
        }
        CanonicalCase::TwoSigmaQuintic => {
            if toric.quadrics.len() != 6 || !toric.cubics.is_empty() || extra.len() != 3 {
                return fail("expected six toric quadrics and three cubics".into());
            }
        }
        CanonicalCase::CliffordGE2 | CanonicalCase::Trigonal => {
            if ctx.delta1.boundary_count() < 4 || !toric.cubics.is_empty() {
                return fail(format!(
                    "interior hull has {} boundary points and {} toric cubics",
                    ctx.delta1.boundary_count(),
                    toric.cubics.len()
                ));
            }
            if counts.quadrics != petri_quadrics {
                return fail(format!("{} quadrics, expected {petri_quadrics}", counts.quadrics));
            }
            let expected_cubics = if ctx.case == CanonicalCase::Trigonal { g - 3 } else { 0 };
            if counts.cubics != expected_cubics {
                return fail(format!("{} cubics, expected {expected_cubics}", counts.cubics));
            }
        }
    }
    Ok(CanonicalGenerators {
        context: ctx,
        toric,
        extra,
        counts,
        chi_identity_checked: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_laurent;
    use crate::lattice::convex_hull;

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    const GENUS_14_F: &str = "13*x^6*y^5 - 6*x^6*y^4 + 2*x^3*y^5 + 4*x^3*y^4 + x^3 + 3*y^4";

    /// Polynomial with every lattice point of `poly` in its support and
    /// small pseudo-random coefficients.
    fn dense(poly: &LatticePolygon, salt: i64) -> LaurentPoly {
        let terms: Vec<_> = poly
            .lattice_points()
            .iter()
            .enumerate()
            .map(|(k, q)| ((q.x, q.y), 1 + (k as i64 * 7 + salt * 3) % 11))
            .collect();
        LaurentPoly::from_i64_terms(Field::Rationals, &terms)
    }

    #[test]
    fn contexts() {
        let quartic = dense(&LatticePolygon::sigma().dilate(4), 1);
        let ctx = curve_context(&quartic).unwrap();
        assert_eq!((ctx.genus, ctx.case), (3, CanonicalCase::SigmaQuartic));

        let u = dense(&LatticePolygon::upsilon().dilate(2), 2);
        let ctx = curve_context(&u).unwrap();
        assert_eq!(ctx.delta1, LatticePolygon::upsilon());
        assert_eq!((ctx.genus, ctx.case), (4, CanonicalCase::UpsilonGenus4));

        let f = parse_laurent(GENUS_14_F, Field::Rationals).unwrap();
        let ctx = curve_context(&f).unwrap();
        assert_eq!(ctx.genus, 14);
        assert_eq!(ctx.case, CanonicalCase::CliffordGE2);
        assert_eq!(ctx.delta2.lattice_point_count(), 4);
    }

    #[test]
    fn refusals() {
        let line = parse_laurent("x + y + 1", Field::Rationals).unwrap();
        assert_eq!(genus(&line).unwrap(), 0);
        assert!(matches!(curve_context(&line), Err(Error::GenusTooSmall { genus: 0, .. })));
        let hyp = parse_laurent("y^2 - x^7 - 1", Field::Rationals).unwrap();
        assert!(matches!(curve_context(&hyp), Err(Error::Hyperelliptic { genus: 3 })));
    }

    #[test]
    fn scaled_points() {
        let w = scaled_interior_points(&LatticePolygon::sigma(), 4);
        assert_eq!(w, vec![ScaledPoint::new(p(1, 1), 3)]);
        assert_eq!(w[0].to_string(), "(1/3,1/3)");
        let w = scaled_interior_points(&LatticePolygon::sigma().dilate(2), 3);
        let shown: Vec<String> = w.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, ["(1/2,1/2)", "(1/2,1)", "(1,1/2)"]);
        let tri = convex_hull(&[p(0, 0), p(4, 0), p(0, 4)]);
        let w2: Vec<LatticePoint> = scaled_interior_points(&tri, 2).iter().map(|w| w.num).collect();
        assert_eq!(w2, tri.interior_points());
    }

    #[test]
    fn decompositions() {
        let delta1 = convex_hull(&[p(1, 1), p(2, 1), p(1, 2)]);
        let w = ScaledPoint::new(p(4, 4), 3);
        assert_eq!(decompose(p(0, 0), w, 4, &delta1).unwrap(), vec![p(1, 1); 4]);
        assert_eq!(decompose(p(4, 0), w, 4, &delta1).unwrap(), vec![p(2, 1); 4]);
        let big = LatticePolygon::sigma().dilate(3);
        let w = ScaledPoint::new(p(1, 1), 1);
        assert_eq!(decompose(p(1, 1), w, 2, &big).unwrap(), vec![p(0, 1), p(2, 1)]);
        assert!(matches!(
            decompose(p(9, 9), w, 2, &big),
            Err(Error::DecompositionFailed { .. })
        ));
    }

    #[test]
    fn plane_quintic() {
        let f = dense(&LatticePolygon::sigma().dilate(5), 3);
        let gens = canonical_ideal(&f).unwrap();
        assert_eq!(gens.case(), CanonicalCase::TwoSigmaQuintic);
        assert_eq!(gens.genus(), 6);
        assert_eq!(gens.counts, CanonicalCounts { quadrics: 6, cubics: 3, quartics: 0 });
    }

    #[test]
    fn genus_four() {
        let f = dense(&LatticePolygon::upsilon().dilate(2), 5);
        let gens = canonical_ideal(&f).unwrap();
        assert_eq!(gens.counts, CanonicalCounts { quadrics: 1, cubics: 1, quartics: 0 });
    }

    #[test]
    fn quartic() {
        let f = dense(&LatticePolygon::sigma().dilate(4), 4);
        let gens = canonical_ideal(&f).unwrap();
        assert_eq!(gens.counts, CanonicalCounts { quadrics: 0, cubics: 0, quartics: 1 });
        assert_eq!(gens.extra[0].0, ScaledPoint::new(p(4, 4), 3));
        assert_eq!(gens.extra[0].1.chi(), f.shift(p(4, 4)));
    }

    #[test]
    fn genus_14_curve() {
        let f = parse_laurent(GENUS_14_F, Field::Rationals).unwrap();
        let gens = canonical_ideal(&f).unwrap();
        assert_eq!(gens.counts.quadrics, 66);
        assert_eq!(gens.counts.cubics, 0);
        assert!(gens.chi_identity_checked);
        for (w, form) in &gens.extra {
            assert_eq!(form.chi(), f.shift(w.num));
        }
    }

    #[test]
    fn degenerate_input_refused() {
        // the edge polynomial (1 + t^2)^2 of the long edge has repeated roots
        let f = parse_laurent("x^4 + 2*x^2*y^2 + y^4 + x*y + 1", Field::Rationals).unwrap();
        assert!(matches!(canonical_ideal(&f), Err(Error::Degenerate(_))));
    }
}
