//! Small finite fields and the projective plane over `GF(2^a)`.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// `GF(2^a)` for `a ∈ {1, 2, 3, 4}`, elements as bit polynomials in a `u8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gf2m {
    a: u32,
    // reduction polynomial including the leading term
    poly: u16,
}

impl Gf2m {
    /// Fixed moduli: `x+1`, `x²+x+1`, `x³+x+1`, `x⁴+x+1`.
    pub fn new(a: u32) -> Result<Self> {
        let poly = match a {
            1 => 0b11,
            2 => 0b111,
            3 => 0b1011,
            4 => 0b10011,
            _ => return Err(Error::Unsupported("GF(2^a) needs a in 1..=4")),
        };
        Ok(Gf2m { a, poly })
    }

    pub fn order(&self) -> usize {
        1 << self.a
    }

    /// Elements in increasing integer order, `0` first.
    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.order() as u8
    }

    pub fn add(&self, x: u8, y: u8) -> u8 {
        x ^ y
    }

    pub fn mul(&self, x: u8, y: u8) -> u8 {
        let mut acc: u16 = 0;
        let mut x = x as u16;
        let mut y = y;
        while y != 0 {
            if y & 1 == 1 {
                acc ^= x;
            }
            y >>= 1;
            x <<= 1;
            if x >> self.a & 1 == 1 {
                x ^= self.poly;
            }
        }
        acc as u8
    }

    pub fn inv(&self, x: u8) -> Option<u8> {
        if x == 0 {
            return None;
        }
        self.elements().find(|&y| self.mul(x, y) == 1)
    }
}

/// Arithmetic in `GF(p)` for a prime `p < 256`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=255).contains(&p) || (2..p).any(|d| d * d <= p && p.is_multiple_of(d)) {
            return Err(Error::Unsupported("prime field needs a prime below 256"));
        }
        Ok(PrimeField { p })
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        (x + y) % self.p
    }

    pub fn neg(&self, x: u32) -> u32 {
        (self.p - x % self.p) % self.p
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        x * y % self.p
    }

    /// Nonzero squares in increasing order.
    pub fn squares(&self) -> Vec<u32> {
        let mut s: Vec<u32> = (1..self.p).map(|x| self.mul(x, x)).collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

/// A point of `PG(2, q)` with its first nonzero coordinate equal to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectivePoint(pub [u8; 3]);

impl ProjectivePoint {
    /// Scales a nonzero vector to normal form.
    pub fn normalised(field: &Gf2m, v: [u8; 3]) -> Option<Self> {
        let lead = *v.iter().find(|&&x| x != 0)?;
        let s = field.inv(lead)?;
        Some(ProjectivePoint([
            field.mul(v[0], s),
            field.mul(v[1], s),
            field.mul(v[2], s),
        ]))
    }

    pub fn coords(&self) -> [u8; 3] {
        self.0
    }
}

/// All `q² + q + 1` points in normal form.
pub fn projective_points(field: &Gf2m) -> Vec<ProjectivePoint> {
    let q: Vec<u8> = field.elements().collect();
    let mut out = Vec::new();
    for &y in &q {
        for &z in &q {
            out.push(ProjectivePoint([1, y, z]));
        }
    }
    for &z in &q {
        out.push(ProjectivePoint([0, 1, z]));
    }
    out.push(ProjectivePoint([0, 0, 1]));
    out
}

/// Incidence of point and line, both given by coordinates.
pub fn incident(field: &Gf2m, point: &ProjectivePoint, line: &ProjectivePoint) -> bool {
    let (p, l) = (point.0, line.0);
    let mut s = 0;
    for i in 0..3 {
        s = field.add(s, field.mul(p[i], l[i]));
    }
    s == 0
}

/// The line through two distinct points (their cross product).
pub fn join(field: &Gf2m, a: &ProjectivePoint, b: &ProjectivePoint) -> Option<ProjectivePoint> {
    let (x, y) = (a.0, b.0);
    // characteristic 2: subtraction is addition
    let m = |i: usize, j: usize| field.add(field.mul(x[i], y[j]), field.mul(x[j], y[i]));
    ProjectivePoint::normalised(field, [m(1, 2), m(2, 0), m(0, 1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2m_is_a_field() {
        for a in 1..=4 {
            let f = Gf2m::new(a).unwrap();
            for x in f.elements().skip(1) {
                let y = f.inv(x).unwrap();
                assert_eq!(f.mul(x, y), 1);
            }
            for x in f.elements() {
                for y in f.elements() {
                    for z in f.elements() {
                        assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                        assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                    }
                }
            }
        }
        assert!(Gf2m::new(5).is_err());
    }

    #[test]
    fn plane_counts() {
        let f = Gf2m::new(2).unwrap();
        let pts = projective_points(&f);
        assert_eq!(pts.len(), 21);
        for l in &pts {
            assert_eq!(pts.iter().filter(|p| incident(&f, p, l)).count(), 5);
        }
        let l = join(&f, &pts[0], &pts[5]).unwrap();
        assert!(incident(&f, &pts[0], &l) && incident(&f, &pts[5], &l));
    }

    #[test]
    fn gf11() {
        let f = PrimeField::new(11).unwrap();
        assert_eq!(f.squares(), alloc::vec![1, 3, 4, 5, 9]);
        assert_eq!(f.neg(3), 8);
        assert!(PrimeField::new(12).is_err());
    }
}
