//! Hirzebruch-Jung strings.
//!
//! `Str(α, β; M | a, b; c)` is the chain of rational curves resolving the
//! normalization of `{z^M = u^α v^β}`, decorated with the vanishing orders of
//! the function `u^a v^b z^c`. In the toric picture the normalization is the
//! cone of the first quadrant over the lattice
//!
//! ```text
//! N = {(x, y) in Z^2 : α x + β y ≡ 0 (mod M)}
//! ```
//!
//! and the chain consists of the lattice points on the compact part of the
//! boundary of the convex hull of `N ∩ (quadrant \ 0)`. The point `(x, y)`
//! carries multiplicity `a x + b y + c (α x + β y) / M`, and a boundary point
//! `n_i` has self-intersection `-b_i` where `n_{i-1} + n_{i+1} = b_i n_i`.
//!
//! [`compute_string`] walks the boundary through a negative continued
//! fraction; [`hull_oracle`] enumerates lattice points and takes the hull.

use std::collections::HashMap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StringSpec {
    pub alpha: i64,
    pub beta: i64,
    pub modulus: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl StringSpec {
    pub fn new(alpha: i64, beta: i64, modulus: i64, a: i64, b: i64, c: i64) -> Self {
        Self {
            alpha,
            beta,
            modulus,
            a,
            b,
            c,
        }
    }

    pub fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidStringSpec(msg));
        if self.alpha < 1 || self.beta < 1 || self.modulus < 1 {
            return bad(format!("{self}: α, β and M must be positive"));
        }
        if self.a < 0 || self.b < 0 || self.c < 0 || (self.a, self.b, self.c) == (0, 0, 0) {
            return bad(format!("{self}: exponents must be non-negative and not all zero"));
        }
        if self.alpha.gcd(&self.beta).gcd(&self.modulus) != 1 {
            return bad(format!("{self}: gcd(α, β, M) != 1"));
        }
        Ok(())
    }

    /// The same string read from the other end.
    pub fn reversed(&self) -> Self {
        Self::new(self.beta, self.alpha, self.modulus, self.b, self.a, self.c)
    }

    /// Multiplicity of the function at the lattice point `(x, y)`.
    pub fn multiplicity_at(&self, x: i64, y: i64) -> i64 {
        let (x, y) = (x as i128, y as i128);
        let lin = self.alpha as i128 * x + self.beta as i128 * y;
        debug_assert_eq!(lin % self.modulus as i128, 0);
        (self.a as i128 * x + self.b as i128 * y + self.c as i128 * (lin / self.modulus as i128)) as i64
    }

    /// Ends of the boundary: `(M / gcd(M, α), 0)` and `(0, M / gcd(M, β))`.
    pub fn end_points(&self) -> ((i64, i64), (i64, i64)) {
        let x = self.modulus / self.modulus.gcd(&self.alpha);
        let y = self.modulus / self.modulus.gcd(&self.beta);
        ((x, 0), (0, y))
    }
}

impl std::fmt::Display for StringSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Str({},{};{}|{},{};{})",
            self.alpha, self.beta, self.modulus, self.a, self.b, self.c
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChainVertex {
    pub multiplicity: i64,
    pub self_intersection: i64,
}

/// The decorated chain, listed from the α-end to the β-end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HJChain {
    pub spec: StringSpec,
    pub vertices: Vec<ChainVertex>,
    /// Boundary lattice points from the α-end `(X, 0)` to the β-end `(0, Y)`, ends included.
    pub points: Vec<(i64, i64)>,
    pub alpha_end_multiplicity: i64,
    pub beta_end_multiplicity: i64,
}

impl HJChain {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn multiplicities(&self) -> Vec<i64> {
        self.vertices.iter().map(|v| v.multiplicity).collect()
    }

    pub fn self_intersections(&self) -> Vec<i64> {
        self.vertices.iter().map(|v| v.self_intersection).collect()
    }

    fn from_points(spec: StringSpec, points: Vec<(i64, i64)>) -> Self {
        let mut vertices = Vec::with_capacity(points.len().saturating_sub(2));
        for w in points.windows(3) {
            let (p, q, r) = (w[0], w[1], w[2]);
            let b = if q.0 != 0 {
                (p.0 + r.0) / q.0
            } else {
                (p.1 + r.1) / q.1
            };
            vertices.push(ChainVertex {
                multiplicity: spec.multiplicity_at(q.0, q.1),
                self_intersection: -b,
            });
        }
        let first = points[0];
        let last = *points.last().unwrap();
        Self {
            spec,
            vertices,
            alpha_end_multiplicity: spec.multiplicity_at(first.0, first.1),
            beta_end_multiplicity: spec.multiplicity_at(last.0, last.1),
            points,
        }
    }
}

/// Hirzebruch-Jung expansion `n/q = [b_1, ..., b_s]` with every `b_i >= 2`.
pub fn hj_fraction(n: i64, q: i64) -> Vec<i64> {
    assert!(n > q && q > 0, "need n > q > 0");
    let (mut prev, mut cur) = (n, q);
    let mut out = Vec::new();
    while cur != 0 {
        let b = Integer::div_ceil(&prev, &cur);
        out.push(b);
        (prev, cur) = (cur, b * cur - prev);
    }
    out
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    let e = a.rem_euclid(m).extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}

/// Computes the decorated string from a basis of `N` and a continued
/// fraction, in time linear in the chain length.
pub fn compute_string(spec: &StringSpec) -> Result<HJChain> {
    spec.check()?;
    let m = spec.modulus;
    let g1 = m.gcd(&spec.alpha);
    let g2 = m.gcd(&spec.beta);
    let (p, end) = spec.end_points();
    let x_len = p.0;
    let index = m / (g1 * g2);
    if index == 1 {
        return Ok(HJChain::from_points(*spec, vec![p, end]));
    }
    // (w_x, g1) completes (X, 0) to a basis of N
    let w_x = if x_len == 1 {
        0
    } else {
        (-(spec.beta % x_len) * mod_inverse(spec.alpha / g1, x_len)).rem_euclid(x_len)
    };
    // (0, Y) = a_coef (X, 0) + index (w_x, g1)
    let a_coef = -(index as i128 * w_x as i128 / x_len as i128) as i64;
    let t = a_coef.div_euclid(index) + i64::from(a_coef.rem_euclid(index) != 0);
    let q = index * t - a_coef;
    let first = (w_x + t * x_len, g1);
    let mut points = vec![p, first];
    for b in hj_fraction(index, q) {
        let n = points.len();
        let (u, v) = (points[n - 1], points[n - 2]);
        points.push((b * u.0 - v.0, b * u.1 - v.1));
    }
    debug_assert_eq!(points.last().copied(), Some(end), "{spec}");
    Ok(HJChain::from_points(*spec, points))
}

/// Same chain by enumeration: for every `0 < x < X` take the lowest point of
/// `N` above it, then the lower convex hull (collinear points kept).
pub fn hull_oracle(spec: &StringSpec) -> Result<HJChain> {
    spec.check()?;
    let m = spec.modulus;
    let ((x_len, _), (_, y_len)) = spec.end_points();
    let mut lowest_y: HashMap<i64, i64> = HashMap::new();
    for y in (1..y_len).rev() {
        lowest_y.insert((spec.beta * y).rem_euclid(m), y);
    }
    let mut cands = vec![(0, y_len)];
    for x in 1..x_len {
        let need = (-spec.alpha * x).rem_euclid(m);
        if let Some(&y) = lowest_y.get(&need) {
            cands.push((x, y));
        }
    }
    cands.push((x_len, 0));
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
    };
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pt in cands {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) < 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    hull.reverse();
    Ok(HJChain::from_points(*spec, hull))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(alpha: i64, beta: i64, m: i64) -> HJChain {
        compute_string(&StringSpec::new(alpha, beta, m, 0, 0, 1)).unwrap()
    }

    fn pairs(c: &HJChain) -> Vec<(i64, i64)> {
        c.vertices.iter().map(|v| (v.multiplicity, v.self_intersection)).collect()
    }

    #[test]
    fn known_strings() {
        let c = chain(2, 6, 5);
        assert_eq!(pairs(&c), vec![(2, -3), (4, -2)]);
        assert_eq!((c.alpha_end_multiplicity, c.beta_end_multiplicity), (2, 6));

        let c = chain(6, 1, 5);
        assert_eq!(pairs(&c), vec![(5, -2), (4, -2), (3, -2), (2, -2)]);
        assert_eq!((c.alpha_end_multiplicity, c.beta_end_multiplicity), (6, 1));

        assert_eq!(pairs(&chain(3, 6, 5)), vec![(3, -2), (3, -3)]);
        assert_eq!(pairs(&chain(3, 1, 2)), vec![(2, -2)]);

        let c = chain(1, 3, 3);
        assert!(c.is_empty());
        assert_eq!((c.alpha_end_multiplicity, c.beta_end_multiplicity), (1, 1));
    }

    #[test]
    fn trivial_modulus_is_empty() {
        for (a, b) in [(1, 1), (4, 7), (9, 2)] {
            let s = StringSpec::new(a, b, 1, 1, 2, 3);
            assert!(compute_string(&s).unwrap().is_empty());
        }
    }

    #[test]
    fn oracle_agrees_on_examples() {
        for (a, b, m) in [(2, 6, 5), (3, 6, 5), (3, 1, 2), (6, 1, 5), (5, 7, 12)] {
            let s = StringSpec::new(a, b, m, 0, 0, 1);
            assert_eq!(compute_string(&s).unwrap(), hull_oracle(&s).unwrap(), "{s}");
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(compute_string(&StringSpec::new(2, 4, 6, 0, 0, 1)).is_err());
        assert!(compute_string(&StringSpec::new(1, 1, 2, 0, 0, 0)).is_err());
        assert!(compute_string(&StringSpec::new(0, 1, 2, 0, 0, 1)).is_err());
    }

    #[test]
    fn fraction_expansion() {
        assert_eq!(hj_fraction(5, 4), vec![2, 2, 2, 2]);
        assert_eq!(hj_fraction(5, 2), vec![3, 2]);
        assert_eq!(hj_fraction(7, 3), vec![3, 2, 2]);
    }
}
