//! Hypersurfaces along a codimension-one coordinate subvariety `Y = V(x_i, x_j)`:
//! multiplicity of `Y`, ordinariness at its generic point (computed over the field
//! of rational functions in the free variables), normal flatness at closed points
//! and the locus where closed points fail to be ordinary.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::{ArithError, Field, FieldElem};
use crate::cone::{analyze_hypersurface_point, ConeError, SingularPointReport, Verdict};
use crate::graded::{binomial, GradedError, GradedQuotient};
use crate::groebner::IdealBasis;
use crate::linalg;
use crate::mpoly::{MPoly, MPolyError, Monomial, MonomialOrder, Ring};

pub const DEFAULT_SAMPLES: usize = 24;
pub const DEFAULT_SEED: u64 = 20;
const SAMPLE_RANGE: i64 = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubvarietyError {
    #[error("expected exactly 2 defining variables, got {0}")]
    DefiningVars(usize),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("the subvariety is not contained in the hypersurface: term {0} avoids the defining variables")]
    NotContained(String),
    #[error("point is not on the subvariety")]
    PointNotOnSubvariety,
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    MPoly(#[from] MPolyError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `X = V(f)` and `Y = V(defining variables)`.
#[derive(Clone, Debug)]
pub struct SubvarietySpec {
    f: MPoly,
    defining: Vec<usize>,
    free: Vec<usize>,
}

impl SubvarietySpec {
    pub fn new<S: AsRef<str>>(
        f: MPoly,
        defining_vars: &[S],
    ) -> Result<SubvarietySpec, SubvarietyError> {
        if defining_vars.len() != 2 {
            return Err(SubvarietyError::DefiningVars(defining_vars.len()));
        }
        let ring = f.ring().clone();
        let defining = defining_vars
            .iter()
            .map(|v| {
                ring.var_index(v.as_ref())
                    .ok_or_else(|| SubvarietyError::UnknownVariable(v.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if defining[0] == defining[1] {
            return Err(SubvarietyError::DefiningVars(1));
        }
        if f.is_zero() {
            return Err(SubvarietyError::Cone(ConeError::ZeroPolynomial));
        }
        let free = (0..ring.nvars())
            .filter(|i| !defining.contains(i))
            .collect();
        let spec = SubvarietySpec { f, defining, free };
        if let Some((m, c)) = spec.f.terms().find(|(m, _)| spec.defining_degree(m) == 0) {
            let term = MPoly::term(&ring, m.clone(), c.clone());
            return Err(SubvarietyError::NotContained(term.to_string()));
        }
        Ok(spec)
    }

    pub fn f(&self) -> &MPoly {
        &self.f
    }

    pub fn defining_vars(&self) -> Vec<String> {
        self.defining
            .iter()
            .map(|&i| self.f.ring().vars()[i].clone())
            .collect()
    }

    pub fn free_vars(&self) -> Vec<String> {
        self.free
            .iter()
            .map(|&i| self.f.ring().vars()[i].clone())
            .collect()
    }

    fn defining_degree(&self, m: &Monomial) -> u32 {
        self.defining.iter().map(|&i| m.exponent(i)).sum()
    }

    /// The closed point of `Y` with the given free coordinates.
    pub fn point(&self, free_values: &[FieldElem]) -> Vec<FieldElem> {
        let field = self.f.ring().field();
        let mut p = vec![field.zero(); self.f.nvars()];
        for (&i, v) in self.free.iter().zip(free_values) {
            p[i] = v.clone();
        }
        p
    }

    fn check_on_y(&self, p: &[FieldElem]) -> Result<(), SubvarietyError> {
        if p.len() != self.f.nvars() {
            return Err(SubvarietyError::MPoly(MPolyError::DimensionMismatch {
                expected: self.f.nvars(),
                found: p.len(),
            }));
        }
        if self.defining.iter().any(|&i| !p[i].is_zero()) {
            return Err(SubvarietyError::PointNotOnSubvariety);
        }
        Ok(())
    }

    /// Ring of polynomials in the free variables.
    fn free_ring(&self) -> Result<Ring, SubvarietyError> {
        Ok(Ring::new(self.f.ring().field(), &self.free_vars())?)
    }

    /// Coefficients `c_alpha` (polynomials in the free variables) of the part of `f`
    /// of degree `e` in the defining variables, indexed by the exponent of the
    /// second defining variable.
    fn stratum(&self, e: u32) -> Result<Vec<MPoly>, SubvarietyError> {
        let fr = self.free_ring()?;
        let mut out = vec![MPoly::zero(&fr); e as usize + 1];
        for (m, c) in self.f.terms() {
            if self.defining_degree(m) != e {
                continue;
            }
            let k = m.exponent(self.defining[1]) as usize;
            let e_free: Vec<u32> = self.free.iter().map(|&i| m.exponent(i)).collect();
            out[k] = &out[k] + &MPoly::term(&fr, Monomial::new(e_free), c.clone());
        }
        Ok(out)
    }
}

/// `e(R_q)`: the least degree in the defining variables among the terms of `f`.
pub fn subvariety_multiplicity(spec: &SubvarietySpec) -> u32 {
    spec.f
        .terms()
        .map(|(m, _)| spec.defining_degree(m))
        .min()
        .expect("nonzero")
}

/// The field of rational functions in the free variables over the base field.
fn function_field(spec: &SubvarietySpec) -> Result<Field, ArithError> {
    let mut field = spec.f.ring().field().clone();
    for name in spec.free_vars() {
        field = Field::rational_functions(&field, &name)?;
    }
    Ok(field)
}

/// `f` as a germ at the origin in the defining variables over `k(free variables)`.
pub fn generic_germ(spec: &SubvarietySpec) -> Result<MPoly, SubvarietyError> {
    let field = function_field(spec)?;
    let ring = Ring::new(&field, &spec.defining_vars())?;
    let names = spec.free_vars();
    let symbols: Vec<FieldElem> = names
        .iter()
        .map(|n| field.symbol(n).expect("parameter of the tower"))
        .collect();
    let mut out = MPoly::zero(&ring);
    for (m, c) in spec.f.terms() {
        let mut coeff = field.embed(c);
        for (s, &i) in symbols.iter().zip(&spec.free) {
            coeff = &coeff * &s.pow(m.exponent(i) as u64);
        }
        let e: Vec<u32> = spec.defining.iter().map(|&i| m.exponent(i)).collect();
        out = &out + &MPoly::term(&ring, Monomial::new(e), coeff);
    }
    Ok(out)
}

/// Analysis at the generic point of `Y`; its verdict is whether `Y` is an ordinary
/// subvariety.
pub fn analyze_generic_point(
    spec: &SubvarietySpec,
) -> Result<SingularPointReport, SubvarietyError> {
    let germ = match generic_germ(spec) {
        Ok(g) => g,
        Err(SubvarietyError::Arith(ArithError::TowerTooTall(what))) => {
            return Ok(undetermined_generic(spec, &what));
        }
        Err(err) => return Err(err),
    };
    let origin = vec![germ.ring().field().zero(); 2];
    Ok(analyze_hypersurface_point(&germ, &origin)?)
}

fn undetermined_generic(spec: &SubvarietySpec, what: &str) -> SingularPointReport {
    SingularPointReport {
        vars: spec.defining_vars(),
        multiplicity: subvariety_multiplicity(spec) as u64,
        emdim: 2,
        essential_rank: None,
        tangent_count_geometric: None,
        ordinary: Verdict::Undetermined,
        graded_reduced_base: None,
        graded_reduced_geometric: None,
        tangents_over_base: Vec::new(),
        tangent_points: Vec::new(),
        tangents_generic_position: None,
        seminormal_flag: None,
        tangent_cone: Vec::new(),
        notes: vec![format!(
            "function field of the subvariety is not supported: {what}"
        )],
    }
}

pub fn analyze_closed_point(
    spec: &SubvarietySpec,
    p: &[FieldElem],
) -> Result<SingularPointReport, SubvarietyError> {
    spec.check_on_y(p)?;
    Ok(analyze_hypersurface_point(&spec.f, p)?)
}

/// Equimultiplicity along `Y` at `p`, which for a hypersurface is normal flatness.
pub fn normal_flatness_check(
    spec: &SubvarietySpec,
    p: &[FieldElem],
) -> Result<bool, SubvarietyError> {
    spec.check_on_y(p)?;
    let ord = spec.f.translate(p)?.order_at_origin().expect("nonzero");
    Ok(ord == subvariety_multiplicity(spec))
}

/// A closed point of `Y` visited while testing the exceptional locus.
#[derive(Clone, Debug)]
pub struct LocusSample {
    pub free_values: Vec<FieldElem>,
    pub in_locus: bool,
    pub multiplicity: u64,
    pub tangent_count: Option<usize>,
    pub ordinary: Verdict,
}

/// Conditions on the free variables: closed points outside the locus are ordinary.
#[derive(Clone, Debug)]
pub struct ExceptionalLocus {
    pub free_vars: Vec<String>,
    /// The multiplicity jumps where all of these vanish; `None` if it never does.
    pub multiplicity_jump: Option<Vec<MPoly>>,
    /// Tangents collide or leave the chart where one of these vanishes.
    pub tangent_collision: Vec<MPoly>,
    pub samples: Vec<LocusSample>,
    /// Every sampled point outside the locus was ordinary with the generic
    /// multiplicity and tangent count.
    pub sampling_consistent: bool,
}

impl ExceptionalLocus {
    pub fn contains(&self, free_values: &[FieldElem]) -> Result<bool, SubvarietyError> {
        for h in &self.tangent_collision {
            if h.eval(free_values)?.is_zero() {
                return Ok(true);
            }
        }
        if let Some(jump) = &self.multiplicity_jump {
            let mut all = true;
            for h in jump {
                all &= h.eval(free_values)?.is_zero();
            }
            return Ok(all);
        }
        Ok(false)
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicity_jump.is_none() && self.tangent_collision.is_empty()
    }

    /// The locus as equations, e.g. `x1 = 0`.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = self
            .tangent_collision
            .iter()
            .map(|h| format!("{h} = 0"))
            .collect();
        if let Some(jump) = &self.multiplicity_jump {
            let eqs: Vec<String> = jump.iter().map(|h| format!("{h} = 0")).collect();
            parts.push(eqs.join(" and "));
        }
        if parts.is_empty() {
            "empty".into()
        } else {
            parts.join(" or ")
        }
    }

    /// The open set of ordinary points, e.g. `x1 ≠ 0`.
    pub fn render_open_set(&self) -> String {
        let mut parts: Vec<String> = self
            .tangent_collision
            .iter()
            .map(|h| format!("{h} ≠ 0"))
            .collect();
        if let Some(jump) = &self.multiplicity_jump {
            let mut s = String::from("(");
            for (i, h) in jump.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                let _ = write!(s, "{h}");
            }
            s.push_str(") ≠ 0");
            parts.push(s);
        }
        if parts.is_empty() {
            "all of Y".into()
        } else {
            parts.join(" and ")
        }
    }
}

/// Derives the locus from the stratum of degree `e` in the defining variables: the
/// multiplicity jumps where its coefficients all vanish, and its tangent lines collide
/// where the resultant of its dehomogenization and the derivative vanishes. The
/// result is then tested on seeded random closed points and on rational points of
/// the locus.
pub fn exceptional_locus(
    spec: &SubvarietySpec,
    samples: usize,
    seed: u64,
) -> Result<ExceptionalLocus, SubvarietyError> {
    let field = spec.f.ring().field().clone();
    if field.characteristic() != 0 {
        return Err(SubvarietyError::Precondition(
            "the exceptional locus is computed in characteristic 0".into(),
        ));
    }
    let generic = analyze_generic_point(spec)?;
    if generic.ordinary != Verdict::Yes {
        return Err(SubvarietyError::Precondition(format!(
            "the generic point is not ordinary ({})",
            generic.ordinary
        )));
    }
    let e = subvariety_multiplicity(spec);
    let coeffs = spec.stratum(e)?;
    let multiplicity_jump = if coeffs.iter().any(|c| !c.is_zero() && c.is_constant()) {
        None
    } else {
        Some(normalize_all(
            coeffs.iter().filter(|c| !c.is_zero()).cloned().collect(),
        ))
    };
    let tangent_collision = if e >= 2 {
        collision_polys(&coeffs, e)?
    } else {
        Vec::new()
    };
    let mut locus = ExceptionalLocus {
        free_vars: spec.free_vars(),
        multiplicity_jump,
        tangent_collision,
        samples: Vec::new(),
        sampling_consistent: true,
    };
    sample(spec, &generic, &mut locus, samples, seed)?;
    Ok(locus)
}

/// `B(u + t v, v)` with the least `t >= 0` keeping the coefficient of `v^e` nonzero,
/// then `Res(g, g')` and that leading coefficient, for `g(T) = B(1, T)`.
fn collision_polys(coeffs: &[MPoly], e: u32) -> Result<Vec<MPoly>, SubvarietyError> {
    let ring = coeffs[0].ring().clone();
    let field = ring.field().clone();
    let e = e as usize;
    let mut shifted = Vec::new();
    for t in 0..=e as i64 {
        // coefficient of u^(e-k) v^k in B(u + t v, v)
        let mut g = vec![MPoly::zero(&ring); e + 1];
        for (k, c) in coeffs.iter().enumerate() {
            // c * (u + t v)^(e-k) v^k
            let a = e - k;
            for i in 0..=a {
                let scale = field.from_i64(binomial(a as u64, i as u64) as i64 * t.pow(i as u32));
                g[k + i] = &g[k + i] + &c.scale(&scale);
            }
        }
        if !g[e].is_zero() {
            shifted = g;
            break;
        }
    }
    let deriv: Vec<MPoly> = (1..=e)
        .map(|k| shifted[k].scale(&field.from_i64(k as i64)))
        .collect();
    let res = resultant(&shifted, &deriv, &ring);
    if res.is_zero() {
        return Err(SubvarietyError::Precondition(
            "the tangent form has a repeated factor at the generic point".into(),
        ));
    }
    Ok(normalize_all(vec![res, shifted[e].clone()]))
}

/// Sylvester resultant of `a` and `b` (coefficients listed from degree 0), by
/// fraction-free elimination.
fn resultant(a: &[MPoly], b: &[MPoly], ring: &Ring) -> MPoly {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut mat = vec![vec![MPoly::zero(ring); size]; size];
    for i in 0..n {
        for (k, c) in a.iter().enumerate() {
            mat[i][i + m - k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().enumerate() {
            mat[n + i][i + n - k] = c.clone();
        }
    }
    let mut sign = false;
    let mut prev = MPoly::one(ring);
    for k in 0..size {
        let Some(p) = (k..size).find(|&r| !mat[r][k].is_zero()) else {
            return MPoly::zero(ring);
        };
        if p != k {
            mat.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&mat[i][j] * &mat[k][k]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num.exact_div(&prev).expect("fraction-free step is exact");
            }
            mat[i][k] = MPoly::zero(ring);
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}

/// Drops constants, removes repeated factors of univariate polynomials, makes
/// everything monic and deduplicates.
fn normalize_all(polys: Vec<MPoly>) -> Vec<MPoly> {
    let mut out: Vec<MPoly> = Vec::new();
    for h in polys {
        if h.is_constant() {
            continue;
        }
        let vars = h.variables_present();
        let h = if vars.len() == 1 {
            let u = h.to_upoly(vars[0]).expect("univariate");
            match u.squarefree_decomposition() {
                Ok(parts) => {
                    let field = u.field().clone();
                    let rad = parts
                        .into_iter()
                        .fold(crate::arith::UPoly::one(&field), |acc, (g, _)| &acc * &g);
                    MPoly::from_upoly(h.ring(), vars[0], &rad)
                }
                Err(_) => h,
            }
        } else {
            h
        };
        let h = h.monic(MonomialOrder::DegRevLex);
        if !out.contains(&h) {
            out.push(h);
        }
    }
    out
}

fn sample(
    spec: &SubvarietySpec,
    generic: &SingularPointReport,
    locus: &mut ExceptionalLocus,
    count: usize,
    seed: u64,
) -> Result<(), SubvarietyError> {
    let field = spec.f.ring().field().clone();
    let nfree = spec.free.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Vec<FieldElem>> = Vec::new();
    if nfree > 0 {
        for _ in 0..count {
            points.push(
                (0..nfree)
                    .map(|_| field.from_i64(rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE)))
                    .collect(),
            );
        }
        // rational points of each collision hypersurface, found along random lines
        // parallel to the last free axis
        for h in locus.tangent_collision.clone() {
            for _ in 0..4 {
                let mut vals: Vec<FieldElem> = (0..nfree)
                    .map(|_| field.from_i64(rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE)))
                    .collect();
                let last = nfree - 1;
                let ring = h.ring().clone();
                let images: Vec<MPoly> = (0..nfree)
                    .map(|i| {
                        if i == last {
                            MPoly::var(&ring, i)
                        } else {
                            MPoly::constant(&ring, vals[i].clone())
                        }
                    })
                    .collect();
                let Some(u) = h.substitute(&images)?.to_upoly(last) else {
                    continue;
                };
                if u.is_constant() {
                    continue;
                }
                if let Ok(roots) = u.roots_in_base() {
                    for (r, _) in roots {
                        vals[last] = r;
                        points.push(vals.clone());
                    }
                }
            }
        }
    } else {
        points.push(Vec::new());
    }
    points.dedup();
    let e = subvariety_multiplicity(spec) as u64;
    for values in points {
        let p = spec.point(&values);
        let report = analyze_hypersurface_point(&spec.f, &p)?;
        let in_locus = locus.contains(&values)?;
        if !in_locus
            && (report.ordinary != Verdict::Yes
                || report.multiplicity != e
                || report.tangent_count_geometric != generic.tangent_count_geometric)
        {
            locus.sampling_consistent = false;
        }
        locus.samples.push(LocusSample {
            free_values: values,
            in_locus,
            multiplicity: report.multiplicity,
            tangent_count: report.tangent_count_geometric,
            ordinary: report.ordinary,
        });
    }
    Ok(())
}

/// Everything known about `Y` on `X`.
#[derive(Clone, Debug)]
pub struct SubvarietyReport {
    pub e_subvariety: u32,
    pub ordinary_subvariety: Verdict,
    pub generic_point_report: SingularPointReport,
    pub exceptional_locus: Option<ExceptionalLocus>,
    /// Whether every sampled closed point had multiplicity `e_subvariety`.
    pub equimultiple_everywhere_sampled: Option<bool>,
    pub notes: Vec<String>,
}

pub fn analyze_subvariety(
    spec: &SubvarietySpec,
    samples: usize,
    seed: u64,
) -> Result<SubvarietyReport, SubvarietyError> {
    let e = subvariety_multiplicity(spec);
    let generic = analyze_generic_point(spec)?;
    let mut notes = Vec::new();
    let locus = if generic.ordinary == Verdict::Yes {
        match exceptional_locus(spec, samples, seed) {
            Ok(l) => Some(l),
            Err(SubvarietyError::Precondition(why)) => {
                notes.push(format!("exceptional locus not computed: {why}"));
                None
            }
            Err(err) => return Err(err),
        }
    } else {
        notes.push("exceptional locus not computed: the generic point is not ordinary".into());
        None
    };
    let equimultiple = locus
        .as_ref()
        .map(|l| l.samples.iter().all(|s| s.multiplicity == e as u64));
    Ok(SubvarietyReport {
        e_subvariety: e,
        ordinary_subvariety: generic.ordinary,
        generic_point_report: generic,
        exceptional_locus: locus,
        equimultiple_everywhere_sampled: equimultiple,
        notes,
    })
}

/// Hilbert functions compared at an equimultiple point `p` of `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberConeCheck {
    /// Hilbert function of the full tangent cone at `p`.
    pub full: Vec<u64>,
    /// Hilbert function of the cone in the defining variables at `p`.
    pub fiber: Vec<u64>,
    /// The same at the generic point of `Y`.
    pub generic_fiber: Vec<u64>,
    /// `full(n) = sum_j fiber(j) * C(n - j + d - 1, d - 1)` with `d = dim Y`.
    pub product_identity: bool,
    pub generic_matches: bool,
}

impl FiberConeCheck {
    pub fn holds(&self) -> bool {
        self.product_identity && self.generic_matches
    }
}

/// At an equimultiple point the tangent cone is the fiber cone times `d` free
/// directions, and the fiber cone has the Hilbert function of the generic one.
pub fn fiber_cone_consistency(
    spec: &SubvarietySpec,
    p: &[FieldElem],
    up_to: u32,
) -> Result<FiberConeCheck, SubvarietyError> {
    if !normal_flatness_check(spec, p)? {
        return Err(SubvarietyError::Precondition(
            "the point is not equimultiple along the subvariety".into(),
        ));
    }
    let ring = spec.f.ring().clone();
    let fmin = spec.f.translate(p)?.lowest_form()?;
    let full_q = GradedQuotient::new(&IdealBasis::new(
        &ring,
        vec![fmin.clone()],
        MonomialOrder::DegRevLex,
    ))?;
    let dring = Ring::new(ring.field(), &spec.defining_vars())?;
    let mut map = vec![None; ring.nvars()];
    for (k, &i) in spec.defining.iter().enumerate() {
        map[i] = Some(k);
    }
    let fiber_form = fmin.map_into(&dring, &map, |c| c.clone())?;
    let fiber_q = GradedQuotient::new(&IdealBasis::new(
        &dring,
        vec![fiber_form],
        MonomialOrder::DegRevLex,
    ))?;
    let germ = generic_germ(spec)?;
    let generic_q = GradedQuotient::new(&IdealBasis::new(
        germ.ring(),
        vec![germ.lowest_form()?],
        MonomialOrder::DegRevLex,
    ))?;
    let full: Vec<u64> = (0..=up_to).map(|n| full_q.hilbert(n)).collect();
    let fiber: Vec<u64> = (0..=up_to).map(|n| fiber_q.hilbert(n)).collect();
    let generic_fiber: Vec<u64> = (0..=up_to).map(|n| generic_q.hilbert(n)).collect();
    let d = spec.free.len() as u64;
    let product_identity = (0..=up_to as u64).all(|n| {
        let sum: u64 = (0..=n)
            .map(|j| {
                let ways = if d == 0 {
                    u64::from(j == n)
                } else {
                    binomial(n - j + d - 1, d - 1)
                };
                fiber[j as usize] * ways
            })
            .sum();
        sum == full[n as usize]
    });
    Ok(FiberConeCheck {
        generic_matches: generic_fiber == fiber,
        full,
        fiber,
        generic_fiber,
        product_identity,
    })
}

/// Rank of the coefficient vectors, exposed for tests of the locus polynomials.
#[doc(hidden)]
pub fn coefficient_rank(polys: &[MPoly]) -> usize {
    let mut monos: Vec<Monomial> = polys
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect();
    monos.sort();
    monos.dedup();
    let mat: linalg::Matrix = polys
        .iter()
        .map(|p| monos.iter().map(|m| p.coeff(m)).collect())
        .collect();
    linalg::rank(&mat)
}
