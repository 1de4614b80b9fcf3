//! Newton–Puiseux analysis of plane curve germs at the origin: branches, their
//! orders and tangents.
//!
//! A branch is a Galois-conjugacy class of Puiseux expansions. A simple root of
//! the polynomial of an edge with slope q/p gives one branch `x = t^p, y = c t^q + ...`
//! of order `min(p, q)`. A multiple root `c` in the base field on an edge with
//! `p = 1` is resolved by `y -> x^q (c + y)` and recursion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::arith::{ArithError, FieldElem, UPoly};
use crate::groebner::{is_locally_zero_dimensional, mora_standard_basis, GroebnerError};
use crate::mpoly::{LinearForm, MPoly, MPolyError, Monomial};

pub const DEFAULT_DEPTH_LIMIT: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BranchError {
    #[error("branch analysis needs a polynomial in exactly 2 variables, got {0}")]
    NotBivariate(usize),
    #[error("germ does not pass through the origin")]
    NotAtOrigin,
    #[error("germ is not squarefree")]
    NotSquarefree,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("edge {0} is not an edge of the Newton polygon")]
    StaleEdge(String),
    #[error(transparent)]
    MPoly(#[from] MPolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// An edge from `start` (upper left) to `end` (lower right) of slope `q/p`: the
/// horizontal run is `length * q` and the drop is `length * p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NewtonEdge {
    pub start: (u32, u32),
    pub end: (u32, u32),
    pub q: u32,
    pub p: u32,
    pub length: u32,
}

impl fmt::Display for NewtonEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}-{:?} slope {}/{} length {}",
            self.start, self.end, self.q, self.p, self.length
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Exponent pairs `(i, j)` of the terms `x^i y^j`.
    pub support: BTreeSet<(u32, u32)>,
    pub edges: Vec<NewtonEdge>,
}

fn check_bivariate(f: &MPoly) -> Result<(), BranchError> {
    if f.nvars() != 2 {
        return Err(BranchError::NotBivariate(f.nvars()));
    }
    if f.is_zero() {
        return Err(BranchError::ZeroPolynomial);
    }
    Ok(())
}

/// Lower-left convex hull of the support, from the lowest point of the leftmost
/// column to the leftmost point of the lowest row.
pub fn newton_polygon(f: &MPoly) -> Result<NewtonPolygon, BranchError> {
    check_bivariate(f)?;
    let support: BTreeSet<(u32, u32)> = f
        .terms()
        .map(|(m, _)| (m.exponent(0), m.exponent(1)))
        .collect();
    let start = *support.iter().next().expect("nonzero");
    let jmin = support.iter().map(|&(_, j)| j).min().expect("nonzero");
    let end = *support
        .iter()
        .filter(|&&(_, j)| j == jmin)
        .min()
        .expect("nonzero");
    let mut edges = Vec::new();
    let mut cur = start;
    while cur != end {
        // steepest descent: minimize run/drop, ties broken by the farthest point
        let next = *support
            .iter()
            .filter(|&&(i, j)| j < cur.1 && i >= cur.0)
            .min_by(|a, b| {
                let (ra, da) = ((a.0 - cur.0) as u64, (cur.1 - a.1) as u64);
                let (rb, db) = ((b.0 - cur.0) as u64, (cur.1 - b.1) as u64);
                (ra * db).cmp(&(rb * da)).then(b.1.cmp(&a.1).reverse())
            })
            .expect("end lies below");
        let run = next.0 - cur.0;
        let drop = cur.1 - next.1;
        let g = run.gcd(&drop);
        edges.push(NewtonEdge {
            start: cur,
            end: next,
            q: run / g,
            p: drop / g,
            length: g,
        });
        cur = next;
    }
    Ok(NewtonPolygon { support, edges })
}

/// `sum_k a_(end - k*(q, -p)) T^k`: substituting `y = c x^(q/p)` into the edge terms
/// gives `c^(end.1) * psi(c^p)`.
pub fn edge_polynomial(f: &MPoly, edge: &NewtonEdge) -> Result<UPoly, BranchError> {
    check_bivariate(f)?;
    let at = |(i, j): (u32, u32)| f.coeff(&Monomial::new(vec![i, j]));
    if at(edge.start).is_zero() || at(edge.end).is_zero() {
        return Err(BranchError::StaleEdge(edge.to_string()));
    }
    let coeffs: Vec<FieldElem> = (0..=edge.length)
        .map(|k| at((edge.end.0 - k * edge.q, edge.end.1 + k * edge.p)))
        .collect();
    Ok(UPoly::from_coeffs(f.ring().field(), coeffs))
}

/// Tangent line of a branch, or a class of conjugate branches with pairwise
/// distinct tangents not defined over the base field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchTangent {
    Line(LinearForm),
    Conjugates(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchDatum {
    pub order: u32,
    pub tangent: BranchTangent,
    /// Number of geometric branches this datum stands for.
    pub geometric_count: usize,
}

impl BranchDatum {
    pub fn tangent_text(&self, vars: &[String]) -> String {
        match &self.tangent {
            BranchTangent::Line(l) => l.display_with(vars),
            BranchTangent::Conjugates(m) => format!("irrational tangent class of size {m}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BranchReport {
    pub vars: Vec<String>,
    pub data: Vec<BranchDatum>,
    /// Sum of `order * geometric_count`.
    pub total_order: u64,
    pub complete: bool,
    /// Order of the germ at the origin.
    pub multiplicity: u64,
    pub notes: Vec<String>,
}

impl BranchReport {
    pub fn branch_count(&self) -> usize {
        self.data.iter().map(|d| d.geometric_count).sum()
    }

    pub fn all_linear(&self) -> bool {
        self.data.iter().all(|d| d.order == 1)
    }

    /// Whether no two geometric branches share a tangent.
    pub fn tangents_distinct(&self) -> bool {
        let mut per_line: BTreeMap<String, usize> = BTreeMap::new();
        for d in &self.data {
            if let BranchTangent::Line(l) = &d.tangent {
                *per_line.entry(l.display_with(&self.vars)).or_default() += d.geometric_count;
            }
        }
        per_line.values().all(|&c| c == 1)
    }

    /// `e` linear branches with pairwise distinct tangents; `None` when incomplete.
    pub fn ordinary(&self) -> Option<bool> {
        self.complete.then(|| {
            self.all_linear()
                && self.tangents_distinct()
                && self.branch_count() as u64 == self.multiplicity
        })
    }
}

/// Branches of the germ of `f` at the origin.
pub fn branch_analysis(f: &MPoly, depth_limit: u32) -> Result<BranchReport, BranchError> {
    check_bivariate(f)?;
    if !f.constant_term().is_zero() {
        return Err(BranchError::NotAtOrigin);
    }
    if !is_germ_squarefree(f)? {
        return Err(BranchError::NotSquarefree);
    }
    let ring = f.ring();
    let field = ring.field().clone();
    let mut report = BranchReport {
        vars: ring.vars().to_vec(),
        data: Vec::new(),
        total_order: 0,
        complete: true,
        multiplicity: f.order_at_origin().expect("nonzero") as u64,
        notes: Vec::new(),
    };
    let x_axis = LinearForm::coordinate(&field, 2, 0);
    let y_axis = LinearForm::coordinate(&field, 2, 1);
    let (g, kx) = strip_power(f, 0);
    let (g, ky) = strip_power(&g, 1);
    // squarefree, so each axis divides at most once
    for (k, tangent) in [(kx, &x_axis), (ky, &y_axis)] {
        if k > 0 {
            report.data.push(BranchDatum {
                order: 1,
                tangent: BranchTangent::Line(tangent.clone()),
                geometric_count: k as usize,
            });
        }
    }
    if g.constant_term().is_zero() {
        let polygon = newton_polygon(&g)?;
        for edge in &polygon.edges {
            top_edge(&g, edge, depth_limit, &mut report)?;
        }
    }
    report.total_order = report
        .data
        .iter()
        .map(|d| d.order as u64 * d.geometric_count as u64)
        .sum();
    if report.complete && report.total_order != report.multiplicity {
        report.complete = false;
        report.notes.push(format!(
            "branch orders sum to {} but the multiplicity is {}",
            report.total_order, report.multiplicity
        ));
    }
    Ok(report)
}

/// Splits the edge polynomial into simple roots (count over the closure) and
/// multiple factors.
fn split_roots(psi: &UPoly) -> Result<(usize, Vec<UPoly>), BranchError> {
    let mut simple = 0;
    let mut multiple = Vec::new();
    for (factor, mult) in psi.squarefree_decomposition()? {
        if mult == 1 {
            simple += factor.distinct_root_count_in_closure()?;
        } else {
            multiple.push(factor);
        }
    }
    Ok((simple, multiple))
}

fn wild(f: &MPoly, p: u32) -> bool {
    let c = f.ring().field().characteristic();
    c != 0 && (p as u64).is_multiple_of(c)
}

fn top_edge(
    f: &MPoly,
    edge: &NewtonEdge,
    depth_limit: u32,
    report: &mut BranchReport,
) -> Result<(), BranchError> {
    let field = f.ring().field().clone();
    if wild(f, edge.p) || wild(f, edge.q) {
        report.complete = false;
        report.notes.push(format!(
            "edge {edge}: ramification divisible by the characteristic"
        ));
        return Ok(());
    }
    let psi = edge_polynomial(f, edge)?;
    let (simple, multiple) = split_roots(&psi)?;
    let order = edge.p.min(edge.q);
    let axis = |i| LinearForm::coordinate(&field, 2, i);
    if edge.p == edge.q {
        let simple_part = psi
            .squarefree_decomposition()?
            .into_iter()
            .filter(|(_, m)| *m == 1)
            .fold(UPoly::one(&field), |acc, (g, _)| &acc * &g);
        let rational = simple_part.roots_in_base().unwrap_or_default();
        for (c, _) in &rational {
            report.data.push(BranchDatum {
                order: 1,
                tangent: BranchTangent::Line(slope_line(c)?),
                geometric_count: 1,
            });
        }
        if simple > rational.len() {
            report.data.push(BranchDatum {
                order: 1,
                tangent: BranchTangent::Conjugates(simple - rational.len()),
                geometric_count: simple - rational.len(),
            });
        }
    } else if simple > 0 {
        report.data.push(BranchDatum {
            order,
            tangent: BranchTangent::Line(axis(if edge.q > edge.p { 1 } else { 0 })),
            geometric_count: simple,
        });
    }
    if multiple.is_empty() {
        return Ok(());
    }
    // orient so that the edge has integral slope q/1
    let (g, swapped) = if edge.p == 1 {
        (f.clone(), false)
    } else if edge.q == 1 {
        (swap(f)?, true)
    } else {
        report.complete = false;
        report.notes.push(format!(
            "edge {edge}: multiple roots on a ramified edge are not resolved"
        ));
        return Ok(());
    };
    let q = if swapped { edge.p } else { edge.q };
    for factor in multiple {
        let roots = factor.roots_in_base().unwrap_or_default();
        let degree = factor.degree().unwrap_or(0);
        if roots.len() < degree {
            report.complete = false;
            report.notes.push(format!(
                "edge {edge}: multiple root of {} outside the base field",
                factor.display_with("T")
            ));
        }
        for (c, _) in roots {
            let c = if swapped { c.inv()? } else { c };
            let tangent = if q > 1 {
                axis(if swapped { 0 } else { 1 })
            } else if swapped {
                // x = c y
                LinearForm::new(vec![field.one(), -&c])?
            } else {
                slope_line(&c)?
            };
            let g1 = blow_up(&g, q, &c)?;
            let mut orders = Vec::new();
            if !resolve(
                &g1,
                depth_limit.saturating_sub(1),
                &mut orders,
                &mut report.notes,
            )? {
                report.complete = false;
            }
            let mut by_order: BTreeMap<u32, usize> = BTreeMap::new();
            for (a, count) in orders {
                *by_order.entry(a).or_default() += count;
            }
            for (a, count) in by_order {
                report.data.push(BranchDatum {
                    order: a,
                    tangent: BranchTangent::Line(tangent.clone()),
                    geometric_count: count,
                });
            }
        }
    }
    Ok(())
}

/// The line `y = c x`.
fn slope_line(c: &FieldElem) -> Result<LinearForm, BranchError> {
    Ok(LinearForm::new(vec![-c, c.field().one()])?)
}

/// Branches of `g` through the origin, as `(x-order, count)` pairs. Returns whether
/// the analysis completed.
fn resolve(
    g: &MPoly,
    depth: u32,
    out: &mut Vec<(u32, usize)>,
    notes: &mut Vec<String>,
) -> Result<bool, BranchError> {
    if depth == 0 {
        notes.push("depth limit reached".into());
        return Ok(false);
    }
    let (g, _) = strip_power(g, 0);
    let (g, ky) = strip_power(&g, 1);
    let mut complete = true;
    if ky > 0 {
        // the branch y = 0 is met once by each line x = const
        out.push((1, ky as usize));
        if ky > 1 {
            notes.push("repeated factor after substitution".into());
            complete = false;
        }
    }
    if !g.constant_term().is_zero() {
        return Ok(complete);
    }
    for edge in newton_polygon(&g)?.edges {
        if wild(&g, edge.p) || wild(&g, edge.q) {
            notes.push(format!(
                "edge {edge}: ramification divisible by the characteristic"
            ));
            complete = false;
            continue;
        }
        let psi = edge_polynomial(&g, &edge)?;
        let (simple, multiple) = split_roots(&psi)?;
        if simple > 0 {
            out.push((edge.p, simple));
        }
        for factor in multiple {
            if edge.p != 1 {
                notes.push(format!(
                    "edge {edge}: multiple roots on a ramified edge are not resolved"
                ));
                complete = false;
                continue;
            }
            let roots = factor.roots_in_base().unwrap_or_default();
            if roots.len() < factor.degree().unwrap_or(0) {
                notes.push(format!(
                    "edge {edge}: multiple root of {} outside the base field",
                    factor.display_with("T")
                ));
                complete = false;
            }
            for (c, _) in roots {
                let g1 = blow_up(&g, edge.q, &c)?;
                complete &= resolve(&g1, depth - 1, out, notes)?;
            }
        }
    }
    Ok(complete)
}

/// `g(x, x^q (c + y)) / x^k` with `k` maximal.
fn blow_up(g: &MPoly, q: u32, c: &FieldElem) -> Result<MPoly, BranchError> {
    let ring = g.ring();
    let x = MPoly::var(ring, 0);
    let y = MPoly::var(ring, 1);
    let image = &x.pow(q) * &(&MPoly::constant(ring, c.clone()) + &y);
    let h = g.substitute(&[x, image])?;
    Ok(strip_power(&h, 0).0)
}

/// Divides out the largest power of variable `var`.
fn strip_power(g: &MPoly, var: usize) -> (MPoly, u32) {
    let k = g.terms().map(|(m, _)| m.exponent(var)).min().unwrap_or(0);
    if k == 0 {
        return (g.clone(), 0);
    }
    let n = g.nvars();
    let h = MPoly::from_terms(
        g.ring(),
        g.terms().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e[var] -= k;
            debug_assert_eq!(e.len(), n);
            (Monomial::new(e), c.clone())
        }),
    );
    (h, k)
}

fn swap(f: &MPoly) -> Result<MPoly, BranchError> {
    let ring = f.ring();
    Ok(f.substitute(&[MPoly::var(ring, 1), MPoly::var(ring, 0)])?)
}

/// A plane germ is reduced exactly when its Jacobian ideal `(f, f_x, f_y)` has
/// finite colength at the origin.
pub fn is_germ_squarefree(f: &MPoly) -> Result<bool, BranchError> {
    check_bivariate(f)?;
    let gens = [f.clone(), f.partial_derivative(0), f.partial_derivative(1)];
    if gens.iter().any(|g| !g.constant_term().is_zero()) {
        return Ok(true);
    }
    let gens: Vec<MPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    let sb = mora_standard_basis(&gens)?;
    Ok(is_locally_zero_dimensional(&sb))
}
