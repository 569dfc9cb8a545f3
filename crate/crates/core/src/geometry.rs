//! Lattice polytopes and cones in exact arithmetic.
//!
//! Facets are found by brute force over point subsets: for every
//! `dim`-subset of generators we take the hyperplane through it and keep it
//! when all generators lie on one side. This is quadratic-ish in the number of
//! subsets but exact, and the configurations handled here have at most a
//! dozen points in dimension at most eight.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{kernel, rank, to_q};
use crate::rational::{big_to_i64, ceil_i64, dot_i64, floor_i64, int, primitive_integer_vector, Rational};

/// Points `b_i` in `Z^m` together with their lifts `a_i = (b_i, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeConfig {
    pub m: usize,
    pub points: Vec<Vec<i64>>,
    pub lifted: Vec<Vec<i64>>,
}

impl LatticeConfig {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The configuration `0, e_1, ..., e_m, (alpha, -beta)` in that order, so
    /// indices run `0..=m+1` with the origin first.
    pub fn alpha_beta(alpha: &[u64], beta: &[u64]) -> Result<Self> {
        let m = alpha.len() + beta.len();
        let mut pts = vec![vec![0i64; m]];
        for i in 0..m {
            let mut e = vec![0; m];
            e[i] = 1;
            pts.push(e);
        }
        pts.push(
            alpha
                .iter()
                .map(|&a| a as i64)
                .chain(beta.iter().map(|&b| -(b as i64)))
                .collect(),
        );
        lift_config(&pts)
    }

    /// Sum of the lifted generators with the given integer weights.
    pub fn combine(&self, weights: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.m + 1];
        for (a, &w) in self.lifted.iter().zip(weights) {
            for (o, &x) in out.iter_mut().zip(a) {
                *o += w * x;
            }
        }
        out
    }

    pub fn combine_rational(&self, weights: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.m + 1];
        for (a, w) in self.lifted.iter().zip(weights) {
            for (o, &x) in out.iter_mut().zip(a) {
                *o += w * int(x);
            }
        }
        out
    }

    pub fn polytope(&self) -> Result<HPolytope> {
        convex_hull_hrep(&self.points)
    }
}

fn affine_rank(points: &[Vec<i64>]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() {
        return 0;
    }
    rank(&to_q(&diffs))
}

fn check_dims(points: &[Vec<i64>]) -> Result<usize> {
    let m = points.first().map(|p| p.len()).ok_or(Error::Degenerate { rank: 0, dim: 0 })?;
    for p in points {
        if p.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: p.len(),
            });
        }
    }
    Ok(m)
}

pub fn lift_config(points: &[Vec<i64>]) -> Result<LatticeConfig> {
    let m = check_dims(points)?;
    let r = affine_rank(points);
    if r < m {
        return Err(Error::Degenerate { rank: r, dim: m });
    }
    let lifted = points
        .iter()
        .map(|p| p.iter().copied().chain(std::iter::once(1)).collect())
        .collect();
    Ok(LatticeConfig {
        m,
        points: points.to_vec(),
        lifted,
    })
}

/// `normal . x <= offset`, with `normal` primitive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn value(&self, x: &[i64]) -> i64 {
        dot_i64(&self.normal, x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    pub dim: usize,
    pub facets: Vec<Facet>,
    pub vertices: Vec<Vec<Rational>>,
}

impl HPolytope {
    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| f.value(x) <= f.offset)
    }

    pub fn strictly_contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| f.value(x) < f.offset)
    }

    /// Strict containment of a rational point.
    pub fn strictly_contains_rational(&self, x: &[Rational]) -> bool {
        self.facets.iter().all(|f| {
            let v = f
                .normal
                .iter()
                .zip(x)
                .fold(Rational::zero(), |acc, (&n, xi)| acc + int(n) * xi);
            v < int(f.offset)
        })
    }

    /// Integer bounding box `[lo_i, hi_i]` of the vertex set.
    pub fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let lo = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| ceil_i64(&v[i])).min().unwrap_or(0))
            .collect();
        let hi = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| floor_i64(&v[i])).max().unwrap_or(-1))
            .collect();
        (lo, hi)
    }
}

/// Hyperplane through `dim` affinely independent points, as a primitive normal.
fn hyperplane_normal(points: &[&Vec<i64>]) -> Option<Vec<i64>> {
    let dim = points[0].len();
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(points[0]).map(|(a, b)| a - b).collect())
        .collect();
    let k = if diffs.is_empty() {
        // dim == 1: any nonzero normal
        vec![vec![int(1)]]
    } else {
        kernel(&to_q(&diffs), dim)
    };
    if k.len() != 1 {
        return None;
    }
    Some(primitive_integer_vector(&k[0]).iter().map(big_to_i64).collect())
}

fn vertices_from_facets(dim: usize, facets: &[Facet], points: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let verts: BTreeSet<Vec<i64>> = points
        .iter()
        .filter(|p| {
            let tight: Vec<Vec<i64>> = facets
                .iter()
                .filter(|f| f.value(p) == f.offset)
                .map(|f| f.normal.clone())
                .collect();
            !tight.is_empty() && rank(&to_q(&tight)) == dim
        })
        .cloned()
        .collect();
    verts
        .into_iter()
        .map(|v| v.into_iter().map(int).collect())
        .collect()
}

pub fn convex_hull_hrep(points: &[Vec<i64>]) -> Result<HPolytope> {
    let dim = check_dims(points)?;
    let r = affine_rank(points);
    if r < dim {
        return Err(Error::Degenerate { rank: r, dim });
    }
    let pts: Vec<Vec<i64>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let mut facets = BTreeSet::new();
    for subset in pts.iter().combinations(dim) {
        let Some(normal) = hyperplane_normal(&subset) else {
            continue;
        };
        let offset = dot_i64(&normal, subset[0]);
        let values: Vec<i64> = pts.iter().map(|p| dot_i64(&normal, p)).collect();
        if values.iter().all(|&v| v <= offset) {
            facets.insert(Facet { normal, offset });
        } else if values.iter().all(|&v| v >= offset) {
            facets.insert(Facet {
                normal: normal.iter().map(|x| -x).collect(),
                offset: -offset,
            });
        }
    }
    let facets: Vec<Facet> = facets.into_iter().collect();
    let vertices = vertices_from_facets(dim, &facets, &pts);
    Ok(HPolytope {
        dim,
        facets,
        vertices,
    })
}

pub fn dilate(p: &HPolytope, k: i64) -> Result<HPolytope> {
    if k <= 0 {
        return Err(Error::NonPositiveDilation(k));
    }
    Ok(HPolytope {
        dim: p.dim,
        facets: p
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                offset: f.offset * k,
            })
            .collect(),
        vertices: p
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * int(k)).collect())
            .collect(),
    })
}

/// Depth-first walk over the bounding box. A branch is cut as soon as some
/// facet cannot become strict whatever the remaining coordinates are.
struct BoxWalk<'a> {
    facets: &'a [Facet],
    lo: &'a [i64],
    hi: &'a [i64],
    /// `rest_min[f][i]`: minimum of `normal . x` over coordinates `i..`.
    rest_min: Vec<Vec<i64>>,
    strict: bool,
}

impl<'a> BoxWalk<'a> {
    fn new(facets: &'a [Facet], lo: &'a [i64], hi: &'a [i64], strict: bool) -> Self {
        let dim = lo.len();
        let rest_min = facets
            .iter()
            .map(|f| {
                let mut acc = vec![0i64; dim + 1];
                for i in (0..dim).rev() {
                    let n = f.normal[i];
                    acc[i] = acc[i + 1] + (n * lo[i]).min(n * hi[i]);
                }
                acc
            })
            .collect();
        Self {
            facets,
            lo,
            hi,
            rest_min,
            strict,
        }
    }

    fn walk(&self, x: &mut Vec<i64>, partial: &mut [i64], out: &mut Vec<Vec<i64>>, first_only: bool) -> bool {
        let depth = x.len();
        if depth == self.lo.len() {
            out.push(x.clone());
            return first_only;
        }
        for v in self.lo[depth]..=self.hi[depth] {
            for (f, p) in self.facets.iter().zip(partial.iter_mut()) {
                *p += f.normal[depth] * v;
            }
            x.push(v);
            let stop = self.feasible_next(partial, depth + 1) && self.walk(x, partial, out, first_only);
            x.pop();
            for (f, p) in self.facets.iter().zip(partial.iter_mut()) {
                *p -= f.normal[depth] * v;
            }
            if stop {
                return true;
            }
        }
        false
    }

    fn feasible_next(&self, partial: &[i64], depth: usize) -> bool {
        self.facets
            .iter()
            .zip(&self.rest_min)
            .zip(partial)
            .all(|((f, rm), p)| {
                let bound = p + rm[depth];
                if self.strict {
                    bound < f.offset
                } else {
                    bound <= f.offset
                }
            })
    }
}

fn enumerate_box(p: &HPolytope, strict: bool, first_only: bool) -> Vec<Vec<i64>> {
    let (lo, hi) = p.bounding_box();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Vec::new();
    }
    let walker = BoxWalk::new(&p.facets, &lo, &hi, strict);
    if p.dim == 0 {
        return if p.facets.iter().all(|f| if strict { 0 < f.offset } else { 0 <= f.offset }) {
            vec![vec![]]
        } else {
            vec![]
        };
    }
    let slice = |v0: i64| {
        let mut out = Vec::new();
        let mut partial: Vec<i64> = p.facets.iter().map(|f| f.normal[0] * v0).collect();
        if walker.feasible_next(&partial, 1) {
            let mut x = vec![v0];
            walker.walk(&mut x, &mut partial, &mut out, first_only);
        }
        out
    };
    if first_only {
        for v0 in lo[0]..=hi[0] {
            let s = slice(v0);
            if !s.is_empty() {
                return s;
            }
        }
        return Vec::new();
    }
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (lo[0]..=hi[0]).into_par_iter().map(slice).flatten().collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (lo[0]..=hi[0]).flat_map(slice).collect()
    }
}

/// Integer points strictly inside every facet, in lexicographic order.
pub fn interior_lattice_points(p: &HPolytope) -> Vec<Vec<i64>> {
    enumerate_box(p, true, false)
}

/// First interior lattice point in lexicographic order, if any.
pub fn first_interior_lattice_point(p: &HPolytope) -> Option<Vec<i64>> {
    enumerate_box(p, true, true).into_iter().next()
}

pub fn lattice_points(p: &HPolytope) -> Vec<Vec<i64>> {
    enumerate_box(p, false, false)
}

/// Cone `{x : n . x >= 0 for every facet normal n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HCone {
    pub dim: usize,
    pub facets: Vec<Vec<i64>>,
    pub generators: Vec<Vec<i64>>,
}

impl HCone {
    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|n| dot_i64(n, x) >= 0)
    }

    pub fn is_interior(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|n| dot_i64(n, x) > 0)
    }
}

/// H-representation of the real cone spanned by `generators`.
pub fn cone_from_generators(generators: &[Vec<i64>]) -> Result<HCone> {
    let dim = check_dims(generators)?;
    let r = rank(&to_q(generators));
    if r < dim {
        return Err(Error::Degenerate { rank: r, dim });
    }
    let gens: Vec<Vec<i64>> = generators.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let mut facets = BTreeSet::new();
    for subset in gens.iter().combinations(dim - 1) {
        let rows: Vec<Vec<i64>> = subset.iter().map(|v| (*v).clone()).collect();
        let k = if rows.is_empty() {
            vec![vec![int(1)]]
        } else {
            kernel(&to_q(&rows), dim)
        };
        if k.len() != 1 {
            continue;
        }
        let n: Vec<i64> = primitive_integer_vector(&k[0]).iter().map(big_to_i64).collect();
        let values: Vec<i64> = gens.iter().map(|g| dot_i64(&n, g)).collect();
        if values.iter().all(|&v| v >= 0) {
            facets.insert(n);
        } else if values.iter().all(|&v| v <= 0) {
            facets.insert(n.iter().map(|x| -x).collect());
        }
    }
    Ok(HCone {
        dim,
        facets: facets.into_iter().collect(),
        generators: generators.to_vec(),
    })
}

pub fn cone_hrep(cfg: &LatticeConfig) -> Result<HCone> {
    cone_from_generators(&cfg.lifted)
}

/// Lattice points of `C(A)` up to a degree bound, graded by last coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedLatticePoints {
    pub degree_bound: u32,
    pub members: Vec<Vec<i64>>,
    pub interior_flags: Vec<bool>,
}

impl GradedLatticePoints {
    pub fn interior(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.members
            .iter()
            .zip(&self.interior_flags)
            .filter(|(_, &f)| f)
            .map(|(u, _)| u)
    }

    /// Least degree of an interior member, if there is one.
    pub fn min_interior_degree(&self) -> Option<i64> {
        self.interior().map(|u| *u.last().unwrap()).min()
    }
}

pub fn cone_sections(cfg: &LatticeConfig, d: u32) -> Result<GradedLatticePoints> {
    let cone = cone_hrep(cfg)?;
    let base = cfg.polytope()?;
    let mut members = Vec::new();
    members.push(vec![0; cfg.m + 1]);
    for t in 1..=d as i64 {
        let slice = dilate(&base, t)?;
        for x in lattice_points(&slice) {
            let mut u = x;
            u.push(t);
            if cone.contains(&u) {
                members.push(u);
            }
        }
    }
    members.sort();
    let interior_flags = members.iter().map(|u| cone.is_interior(u)).collect();
    Ok(GradedLatticePoints {
        degree_bound: d,
        members,
        interior_flags,
    })
}

/// Whether the points indexed by `q` share a facet of the hull of the configuration.
pub fn on_common_face(cfg: &LatticeConfig, q: &[usize]) -> Result<bool> {
    if let Some(&bad) = q.iter().find(|&&i| i >= cfg.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            len: cfg.len(),
        });
    }
    let p = cfg.polytope()?;
    Ok(p
        .facets
        .iter()
        .any(|f| q.iter().all(|&i| f.value(&cfg.points[i]) == f.offset)))
}

fn normalize_facet(normal: Vec<i64>, offset: i64) -> Facet {
    let g = normal.iter().fold(0, |acc, &x| crate::rational::gcd_i64(acc, x)).max(1);
    Facet {
        normal: normal.iter().map(|x| x / g).collect(),
        offset: offset.div_euclid(g),
    }
}

/// `Delta(alpha, beta)` from its closed-form inequalities.
///
/// A point lies in the polytope iff
/// `sum x <= 1 + min(0, x_j / beta_j)` and `x_i >= -alpha_i min(0, x_j / beta_j)`,
/// which expands branch by branch into
/// `sum x <= 1`, `beta_j sum x - x_j <= beta_j`, `-x_i <= 0`, and
/// `-beta_j x_i - alpha_i x_j <= 0`.
pub fn delta_alpha_beta(alpha: &[u64], beta: &[u64]) -> Result<HPolytope> {
    let sa: u64 = alpha.iter().sum();
    let sb: u64 = beta.iter().sum();
    if sa != sb || alpha.is_empty() || beta.is_empty() || alpha.iter().chain(beta).any(|&x| x == 0) {
        return Err(Error::Unbalanced { alpha: sa, beta: sb });
    }
    let n = alpha.len();
    let m = n + beta.len();
    let mut ineqs = Vec::new();
    ineqs.push(normalize_facet(vec![1; m], 1));
    for (jj, &b) in beta.iter().enumerate() {
        let j = n + jj;
        let b = b as i64;
        let mut normal = vec![b; m];
        normal[j] -= 1;
        ineqs.push(normalize_facet(normal, b));
    }
    for (i, &a) in alpha.iter().enumerate() {
        let mut normal = vec![0; m];
        normal[i] = -1;
        ineqs.push(normalize_facet(normal, 0));
        for (jj, &b) in beta.iter().enumerate() {
            let j = n + jj;
            let mut normal = vec![0; m];
            normal[i] = -(b as i64);
            normal[j] = -(a as i64);
            ineqs.push(normalize_facet(normal, 0));
        }
    }
    let cfg = LatticeConfig::alpha_beta(alpha, beta)?;
    // Drop redundant inequalities: a facet is tight on `m` affinely independent generators.
    let facets: Vec<Facet> = ineqs
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .filter(|f| {
            let tight: Vec<Vec<i64>> = cfg
                .points
                .iter()
                .filter(|p| f.value(p) == f.offset)
                .cloned()
                .collect();
            affine_rank(&tight) + 1 >= m && tight.len() >= m
        })
        .collect();
    let vertices = vertices_from_facets(m, &facets, &cfg.points);
    Ok(HPolytope {
        dim: m,
        facets,
        vertices,
    })
}

/// Whether the rational point `x` has all coordinates integral.
pub fn is_lattice_point(x: &[Rational]) -> bool {
    x.iter().all(|r| r.denom() == &num_bigint::BigInt::from(1) || r.is_zero())
}
