//! Finite sets of projective points: Hilbert functions by evaluation rank and the
//! generic position test.

use std::fmt;

use thiserror::Error;

use crate::arith::{Field, FieldElem};
use crate::graded::binomial;
use crate::linalg;
use crate::mpoly::{parse_point, parse_scalar, Monomial, ParseError};

/// Largest degree for which evaluation matrices are built.
pub const MAX_POINTS_DEGREE: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointsError {
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point {0} is repeated")]
    Duplicate(String),
    #[error("a point set needs at least one point")]
    Empty,
    #[error("degree {0} exceeds the limit {MAX_POINTS_DEGREE}")]
    DegreeTooLarge(u32),
    #[error("points over different fields")]
    FieldMismatch,
    #[error("cannot parse point list at offset {offset}: {source}")]
    Parse { offset: usize, source: ParseError },
}

/// Homogeneous coordinates scaled so the first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<FieldElem>,
}

impl ProjPoint {
    pub fn new(coords: Vec<FieldElem>) -> Result<ProjPoint, PointsError> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(PointsError::ZeroVector)?
            .inv()
            .map_err(|_| PointsError::ZeroVector)?;
        Ok(ProjPoint {
            coords: coords.iter().map(|c| c * &lead).collect(),
        })
    }

    pub fn from_i64(field: &Field, coords: &[i64]) -> Result<ProjPoint, PointsError> {
        ProjPoint::new(coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn coords(&self) -> &[FieldElem] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn field(&self) -> &Field {
        self.coords[0].field()
    }

    /// Value of the monomial `m` at these coordinates.
    pub fn eval_monomial(&self, m: &Monomial) -> FieldElem {
        let mut acc = self.field().one();
        for (c, &k) in self.coords.iter().zip(m.exponents()) {
            if k > 0 {
                acc = &acc * &c.pow(k as u64);
            }
        }
        acc
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(":"))
    }
}

/// Pairwise distinct points of `P^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<ProjPoint>,
    r: usize,
}

impl PointSet {
    pub fn new(points: Vec<ProjPoint>) -> Result<PointSet, PointsError> {
        let first = points.first().ok_or(PointsError::Empty)?;
        let len = first.len();
        let field = first.field().clone();
        for (i, p) in points.iter().enumerate() {
            if p.len() != len {
                return Err(PointsError::DimensionMismatch {
                    expected: len,
                    found: p.len(),
                });
            }
            if p.field() != &field {
                return Err(PointsError::FieldMismatch);
            }
            if points[..i].contains(p) {
                return Err(PointsError::Duplicate(p.to_string()));
            }
        }
        Ok(PointSet { points, r: len - 1 })
    }

    /// Like [`PointSet::new`] but silently drops repeated points.
    pub fn new_dedup(points: Vec<ProjPoint>) -> Result<PointSet, PointsError> {
        let mut distinct: Vec<ProjPoint> = Vec::new();
        for p in points {
            if !distinct.contains(&p) {
                distinct.push(p);
            }
        }
        PointSet::new(distinct)
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    /// Projective dimension `r`.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn field(&self) -> &Field {
        self.points[0].field()
    }
}

/// All monomials of degree `n` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, n: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == e.len() {
            e[i] = left;
            out.push(Monomial::new(e.clone()));
            e[i] = 0;
            return;
        }
        for k in (0..=left).rev() {
            e[i] = k;
            rec(i + 1, left - k, e, out);
        }
        e[i] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if n == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, n, &mut vec![0; nvars], &mut out);
    out
}

/// Rank of the evaluation of all degree-`n` monomials at the points.
pub fn hilbert_function_points(ps: &PointSet, n: u32) -> Result<u64, PointsError> {
    if n > MAX_POINTS_DEGREE {
        return Err(PointsError::DegreeTooLarge(n));
    }
    let monos = monomials_of_degree(ps.r + 1, n);
    let mat: linalg::Matrix = ps
        .points
        .iter()
        .map(|p| monos.iter().map(|m| p.eval_monomial(m)).collect())
        .collect();
    Ok(linalg::rank(&mat) as u64)
}

/// `min{n : C(n+r, r) >= e}`.
pub fn generic_position_degree(e: u64, r: usize) -> u32 {
    (0u32..)
        .find(|&n| binomial(n as u64 + r as u64, r as u64) >= e)
        .expect("binomials are unbounded")
}

/// Whether a Hilbert function of `e` points in `P^r` is maximal, i.e.
/// `H(n) = min(e, C(n+r, r))` for `1 <= n <= sigma`.
pub fn is_maximal_hilbert_function<E>(
    e: u64,
    r: usize,
    mut h: impl FnMut(u32) -> Result<u64, E>,
) -> Result<bool, E> {
    let sigma = generic_position_degree(e, r);
    for n in 1..=sigma {
        if h(n)? != e.min(binomial(n as u64 + r as u64, r as u64)) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_generic_position(ps: &PointSet) -> Result<bool, PointsError> {
    is_maximal_hilbert_function(ps.len() as u64, ps.r, |n| hilbert_function_points(ps, n))
}

/// Generic position of the points of `P^r` given by lines through the origin of
/// `A^{r+1}`, each line given by a spanning vector.
pub fn lines_generic_position(lines: &[Vec<FieldElem>]) -> Result<bool, PointsError> {
    let points = lines
        .iter()
        .map(|v| ProjPoint::new(v.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    is_generic_position(&PointSet::new(points)?)
}

/// Parses `1:0:0; 0:1:0; 1:2:4`.
pub fn parse_points(text: &str, field: &Field) -> Result<PointSet, PointsError> {
    let mut points = Vec::new();
    let mut offset = 0;
    let parts: Vec<&str> = text.split(';').collect();
    for (i, part) in parts.iter().enumerate() {
        // tolerate a trailing separator
        if i > 0 && i + 1 == parts.len() && part.trim().is_empty() {
            break;
        }
        let coords =
            parse_point(&part.replace(':', ","), field).map_err(|source| PointsError::Parse {
                offset: offset + parse_offset(&source),
                source,
            })?;
        points.push(ProjPoint::new(coords)?);
        offset += part.len() + 1;
    }
    PointSet::new(points)
}

fn parse_offset(e: &ParseError) -> usize {
    match e {
        ParseError::Syntax { pos, .. }
        | ParseError::UnknownVariable { pos, .. }
        | ParseError::BadExponent { pos, .. }
        | ParseError::BadDivision { pos, .. } => *pos,
    }
}

/// Parses a single colon-separated point.
pub fn parse_proj_point(text: &str, field: &Field) -> Result<ProjPoint, PointsError> {
    let coords = text
        .split(':')
        .map(|c| parse_scalar(c, field))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|source| PointsError::Parse { offset: 0, source })?;
    ProjPoint::new(coords)
}
