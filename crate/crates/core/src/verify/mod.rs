//! Independent checks: kernel dimensions of `χ_d`, degree-wise span and
//! minimality of generator sets, and vanishing at sampled curve points over
//! prime fields.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{inv_mod, mul_mod, pow_mod, rank_and_pivots, Field, FieldElement, RowSpace};
use crate::error::{Error, Result};
use crate::laurent::{prime_field_roots, LaurentPoly};
use crate::lattice::{LatticePoint, LatticePolygon};
use crate::toric::{binomial, chi_matrix, multiple_rows, MonomialForm, MonomialIndex};

/// `dim I_d(Tor(Γ))` as the kernel dimension of the `χ_d` matrix.
pub fn oracle_dim_toric(poly: &LatticePolygon, d: usize, field: Field) -> Result<usize> {
    if !(1..=4).contains(&d) {
        return Err(Error::DegreeOutOfRange(d));
    }
    let m = chi_matrix(poly, d, field)?;
    Ok(m.ncols() - rank_and_pivots(&m).rank)
}

/// A point `(x, y)` of the curve with both coordinates in `F_p^×`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SamplePoint {
    x: u64,
    y: u64,
    p: u64,
}

impl SamplePoint {
    /// Checks that both coordinates are nonzero and that `f(x, y) = 0` in `F_p`.
    pub fn new(f: &LaurentPoly, p: u64, x: u64, y: u64) -> Result<Self> {
        let fp = Field::prime(p)?;
        let (x, y) = (x % p, y % p);
        if x == 0 || y == 0 {
            return Err(Error::NotOnCurve(format!("({x}, {y}) is not a torus point")));
        }
        let reduced = reduce_for(f, p)?;
        let value = reduced.eval(&FieldElement::from_i64(fp, x as i64), &FieldElement::from_i64(fp, y as i64))?;
        if !value.is_zero() {
            return Err(Error::NotOnCurve(format!("f({x}, {y}) = {value} in F_{p}")));
        }
        Ok(SamplePoint { x, y, p })
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// `x^i y^j` in `F_p`, negative exponents allowed.
    pub fn monomial(&self, e: LatticePoint) -> u64 {
        let p = self.p;
        let pw = |b: u64, n: i64| {
            let base = if n < 0 { inv_mod(b, p) } else { b };
            pow_mod(base, n.unsigned_abs(), p)
        };
        mul_mod(pw(self.x, e.x), pw(self.y, e.y), p)
    }
}

fn reduce_for(f: &LaurentPoly, p: u64) -> Result<LaurentPoly> {
    match f.field() {
        Field::Prime(q) if q == p => Ok(f.clone()),
        _ => f.reduce_mod(p),
    }
}

/// Result of a sampling run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleSet {
    pub prime: u64,
    pub seed: u64,
    pub requested: usize,
    pub x_trials: usize,
    pub points: Vec<SamplePoint>,
    /// Set when fewer than half of the requested points were found.
    pub warning: Option<String>,
}

/// Sample up to `count` distinct torus points of `f = 0` over `F_p`.
///
/// `x`-coordinates are drawn from a ChaCha stream seeded with `seed`; for each
/// one the nonzero roots of `f(x, ·)` are collected in increasing order.
pub fn sample_curve_points(f: &LaurentPoly, p: u64, count: usize, seed: u64) -> Result<SampleSet> {
    let fp = Field::prime(p)?;
    let big = reduce_for(f, p)?.to_polynomial()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_trials = (4 * count).max(100).min(p as usize - 1);
    let mut tried = BTreeSet::new();
    let mut points = Vec::with_capacity(count);
    while points.len() < count && tried.len() < max_trials {
        let x0 = rng.gen_range(1..p);
        if !tried.insert(x0) {
            continue;
        }
        let fiber = big.eval_x(&FieldElement::from_i64(fp, x0 as i64));
        if fiber.is_zero() {
            // a vertical line x = x0 is a component; skip it
            continue;
        }
        for y0 in prime_field_roots(&fiber.strip_zero_roots(), p)? {
            if y0 != 0 && points.len() < count {
                points.push(SamplePoint { x: x0, y: y0, p });
            }
        }
    }
    let warning = (points.len() * 2 < count).then(|| {
        format!(
            "only {} of {count} points found after {} x-trials over F_{p}; retry with another prime",
            points.len(),
            tried.len()
        )
    });
    Ok(SampleSet {
        prime: p,
        seed,
        requested: count,
        x_trials: tried.len(),
        points,
        warning,
    })
}

/// Evaluate each form at `(x^i y^j)_{(i,j)}` over its ambient index set for
/// every sample; a form passes when all values are zero.
pub fn vanishing_check(forms: &[MonomialForm], points: &[SamplePoint]) -> Result<Vec<bool>> {
    forms
        .par_iter()
        .map(|form| {
            for pt in points {
                let p = pt.prime();
                let mut acc = 0u64;
                for (m, c) in form.terms() {
                    let mut term = c.reduce_mod(p)?;
                    for q in m {
                        term = mul_mod(term, pt.monomial(*q), p);
                    }
                    acc = (acc + term) % p;
                }
                if acc != 0 {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect()
}

/// Dimension of the degree-`d` span of a generator set and which
/// generators are needed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub degree: usize,
    pub expected: Option<usize>,
    pub computed: usize,
    /// `minimal[i]`: generator `i` is not in the span of the degree-`deg G_i`
    /// multiples of the other generators.
    pub minimal: Vec<bool>,
}

impl SpanReport {
    pub fn dimension_matches(&self) -> bool {
        self.expected.is_none_or(|e| e == self.computed)
    }

    pub fn all_minimal(&self) -> bool {
        self.minimal.iter().all(|&m| m)
    }

    pub fn pass(&self) -> bool {
        self.dimension_matches() && self.all_minimal()
    }
}

pub fn span_and_minimality(gens: &[MonomialForm], d: usize, expected: Option<usize>) -> Result<SpanReport> {
    let Some(first) = gens.first() else {
        return Ok(SpanReport {
            degree: d,
            expected,
            computed: 0,
            minimal: Vec::new(),
        });
    };
    let field = first.field();
    let ambient = first.ambient().clone();
    if gens.iter().any(|g| g.ambient() != &ambient || g.field() != field) {
        return Err(Error::Invariant("generators do not share a ring".into()));
    }

    let index = MonomialIndex::new(ambient.clone(), d);
    let mut space = RowSpace::new(field, index.len());
    for row in multiple_rows(gens, &index)? {
        space.insert(&row)?;
    }
    let computed = space.rank();

    let mut minimal = vec![false; gens.len()];
    let mut degrees: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, g) in gens.iter().enumerate() {
        degrees.entry(g.degree()).or_default().push(i);
    }
    for (&e, members) in &degrees {
        let index = MonomialIndex::new(ambient.clone(), e);
        let lower: Vec<MonomialForm> = gens.iter().filter(|g| g.degree() < e).cloned().collect();
        let mut base = RowSpace::new(field, index.len());
        for row in multiple_rows(&lower, &index)? {
            base.insert(&row)?;
        }
        let rows: Vec<_> = members
            .iter()
            .map(|&i| gens[i].to_sparse(&index))
            .collect::<Result<_>>()?;
        let mut all = base.clone();
        let mut independent = 0;
        for row in &rows {
            if all.insert(row)? {
                independent += 1;
            }
        }
        if independent == rows.len() {
            for &i in members {
                minimal[i] = true;
            }
            continue;
        }
        let flags: Vec<bool> = (0..rows.len())
            .into_par_iter()
            .map(|k| {
                let mut others = base.clone();
                for (j, row) in rows.iter().enumerate() {
                    if j != k {
                        others.insert(row)?;
                    }
                }
                Ok(!others.contains(&rows[k])?)
            })
            .collect::<Result<_>>()?;
        for (&i, flag) in members.iter().zip(flags) {
            minimal[i] = flag;
        }
    }
    Ok(SpanReport {
        degree: d,
        expected,
        computed,
        minimal,
    })
}

/// `dim I_d(C^can) = C(g+d−1, d) − (2d−1)(g−1)` for `d ≥ 2`.
pub fn canonical_ideal_dimension(genus: usize, d: usize) -> usize {
    let g = genus as u64;
    let d64 = d as u64;
    (binomial(g + d64 - 1, d64) - ((2 * d64 - 1) * (g - 1)) as u128) as usize
}

/// `χ_d(G)` is zero or a monomial multiple of `f`.
pub fn chi_image_ok(form: &MonomialForm, f: &LaurentPoly) -> bool {
    let image = form.chi();
    if image.is_zero() {
        return true;
    }
    let (Some((top, _)), Some((ftop, _))) = (image.terms().last(), f.terms().last()) else {
        return false;
    };
    image == f.shift(top - ftop)
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub inputs_digest: String,
    pub expected: serde_json::Value,
    pub computed: serde_json::Value,
    pub pass: bool,
    pub seed: Option<u64>,
}

/// SHA-256 over the given parts, separated by newlines, in hex.
pub fn inputs_digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for part in parts {
        h.update(part.as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

/// Full battery for a canonical generator set: `χ` images, vanishing at
/// sampled points, the Hilbert function dimensions in degrees 2 and 3, minimality.
pub fn verify_canonical(
    f: &LaurentPoly,
    genus: usize,
    gens: &[MonomialForm],
    prime: u64,
    samples: usize,
    seed: u64,
) -> Result<Vec<CheckReport>> {
    let rendered: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    let mut parts = vec![f.to_string()];
    parts.extend(rendered.iter().cloned());
    let digest = inputs_digest(&parts.iter().map(String::as_str).collect::<Vec<_>>());
    let report = |check: &str, expected: serde_json::Value, computed: serde_json::Value, pass: bool, seed: Option<u64>| {
        CheckReport {
            check: check.into(),
            inputs_digest: digest.clone(),
            expected,
            computed,
            pass,
            seed,
        }
    };
    let mut out = Vec::new();

    let chi_bad = gens.iter().filter(|g| !chi_image_ok(g, f)).count();
    out.push(report("chi_identity", 0.into(), chi_bad.into(), chi_bad == 0, None));

    let sample = sample_curve_points(f, prime, samples, seed)?;
    let flags = vanishing_check(gens, &sample.points)?;
    let failures = flags.iter().filter(|&&ok| !ok).count();
    let enough = sample.points.len() * 2 >= samples;
    out.push(report(
        "vanishing",
        serde_json::json!({ "failures": 0, "min_points": samples.div_ceil(2), "prime": prime }),
        serde_json::json!({ "failures": failures, "points": sample.points.len(), "prime": prime }),
        failures == 0 && enough,
        Some(seed),
    ));

    let mut minimal = vec![true; gens.len()];
    for d in [2, 3] {
        let expected = canonical_ideal_dimension(genus, d);
        let span = span_and_minimality(gens, d, Some(expected))?;
        out.push(report(
            &format!("span_degree_{d}"),
            expected.into(),
            span.computed.into(),
            span.dimension_matches(),
            None,
        ));
        for (m, s) in minimal.iter_mut().zip(&span.minimal) {
            *m &= *s;
        }
    }
    let redundant: Vec<usize> = minimal.iter().enumerate().filter(|(_, m)| !**m).map(|(i, _)| i).collect();
    out.push(report(
        "minimality",
        serde_json::json!([]),
        serde_json::json!(redundant),
        redundant.is_empty(),
        None,
    ));
    Ok(out)
}

/// Battery for a toric generator set of `Γ`: `χ` images vanish, degree 2
/// and 3 spans match the kernel oracle, no generator is redundant.
pub fn verify_toric(poly: &LatticePolygon, gens: &[MonomialForm]) -> Result<Vec<CheckReport>> {
    let mut parts = vec![poly.to_text()];
    parts.extend(gens.iter().map(|g| g.to_string()));
    let digest = inputs_digest(&parts.iter().map(String::as_str).collect::<Vec<_>>());
    let report = |check: String, expected: serde_json::Value, computed: serde_json::Value, pass: bool| CheckReport {
        check,
        inputs_digest: digest.clone(),
        expected,
        computed,
        pass,
        seed: None,
    };
    let field = gens.first().map_or(Field::Rationals, |g| g.field());
    let mut out = Vec::new();
    let nonzero = gens.iter().filter(|g| !g.chi().is_zero()).count();
    out.push(report("chi_kernel".into(), 0.into(), nonzero.into(), nonzero == 0));
    let mut minimal = vec![true; gens.len()];
    for d in [2, 3] {
        let expected = oracle_dim_toric(poly, d, field)?;
        let span = span_and_minimality(gens, d, Some(expected))?;
        out.push(report(
            format!("span_degree_{d}"),
            expected.into(),
            span.computed.into(),
            span.dimension_matches(),
        ));
        for (m, s) in minimal.iter_mut().zip(&span.minimal) {
            *m &= *s;
        }
    }
    let redundant: Vec<usize> = minimal.iter().enumerate().filter(|(_, m)| !**m).map(|(i, _)| i).collect();
    out.push(report(
        "minimality".into(),
        serde_json::json!([]),
        serde_json::json!(redundant),
        redundant.is_empty(),
    ));
    Ok(out)
}
