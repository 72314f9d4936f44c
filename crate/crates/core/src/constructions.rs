//! Explicit λ-factorisations.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{incident, join, projective_points, Gf2m, PrimeField, ProjectivePoint};
use crate::matching::{all_matchings, Matching, MatchingSet};

/// The circle-method 1-factorisation of `K_{2n}`: `2n` stays fixed and
/// round `r` pairs it with `r+1`, pairing `r+1±i` (mod `2n−1`) otherwise.
pub fn round_robin(n: usize) -> Result<MatchingSet> {
    if n < 1 || 2 * n > 254 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            max: 127,
        });
    }
    let m = 2 * n - 1;
    let mut rounds = Vec::with_capacity(m);
    for r in 0..m {
        let mut pairs = alloc::vec![(2 * n, r + 1)];
        for i in 1..n {
            pairs.push(((r + i) % m + 1, (r + m - i) % m + 1));
        }
        rounds.push(Matching::from_pairs(&pairs)?);
    }
    MatchingSet::new(n, rounds)
}

/// All `(2n−1)!!` matchings.
pub fn full_set(n: usize) -> Result<MatchingSet> {
    MatchingSet::new(n, all_matchings(n)?)
}

/// The regular hyperoval of `PG(2, 2^a)`: the conic `{(1,t,t²)} ∪ {(0,0,1)}`
/// together with its nucleus `(0,1,0)`.
///
/// Labels: `(1,t,t²)` is `t+1` with `t` read as an integer, `(0,1,0)` is
/// `q+1` and `(0,0,1)` is `q+2`.
pub fn hyperoval(field: &Gf2m) -> Vec<ProjectivePoint> {
    let mut o: Vec<ProjectivePoint> = field
        .elements()
        .map(|t| ProjectivePoint([1, t, field.mul(t, t)]))
        .collect();
    o.push(ProjectivePoint([0, 1, 0]));
    o.push(ProjectivePoint([0, 0, 1]));
    o
}

/// True iff every line meets `o` in 0 or 2 points.
pub fn is_hyperoval(field: &Gf2m, o: &[ProjectivePoint]) -> bool {
    projective_points(field).iter().all(|line| {
        let k = o.iter().filter(|p| incident(field, p, line)).count();
        k == 0 || k == 2
    })
}

/// For each point `P` off the hyperoval, pair each
/// `X ∈ O` with the other hyperoval point on the line `PX`.
///
/// Gives `q² − 1` matchings of `K_{q+2}` forming an `(n−2,1,1)`-factorisation
/// of index 1, `n = (q+2)/2`.
pub fn hyperoval_factorisation(a: u32) -> Result<MatchingSet> {
    if !(2..=4).contains(&a) {
        return Err(Error::Unsupported("hyperoval construction needs a in 2..=4"));
    }
    let field = Gf2m::new(a)?;
    let o = hyperoval(&field);
    let mut members = Vec::new();
    for p in projective_points(&field) {
        if o.contains(&p) {
            continue;
        }
        let mut pairs = Vec::with_capacity(o.len() / 2);
        for (i, x) in o.iter().enumerate() {
            let line = join(&field, &p, x).ok_or(Error::Invalid("degenerate line"))?;
            let j = o
                .iter()
                .enumerate()
                .position(|(j, y)| j != i && incident(&field, y, &line))
                .ok_or(Error::Invalid("line meets the hyperoval once"))?;
            if i < j {
                pairs.push((i + 1, j + 1));
            }
        }
        members.push(Matching::from_pairs(&pairs)?);
    }
    MatchingSet::new(o.len() / 2, members)
}

const INF: u32 = 11;

fn agl_label(x: u32) -> usize {
    x as usize + 1
}

fn agl_image(f: &PrimeField, a: u32, b: u32, x: u32) -> u32 {
    if x == INF {
        INF
    } else {
        f.add(f.mul(a, x), b)
    }
}

/// The two seed matchings on `PG(1,11)`: `{0∞} ∪ {x,−x}` and `{0∞} ∪ {x,7x}`
/// over the nonzero squares `x`.
pub fn agl11_seeds() -> [Matching; 2] {
    let f = PrimeField::new(11).expect("prime");
    let seed = |g: &dyn Fn(u32) -> u32| {
        let mut pairs = alloc::vec![(agl_label(0), agl_label(INF))];
        for x in f.squares() {
            pairs.push((agl_label(x), agl_label(g(x))));
        }
        Matching::from_pairs(&pairs).expect("seed is a matching")
    };
    [seed(&|x| f.neg(x)), seed(&|x| f.mul(7, x))]
}

/// Orbit of `m` under `x ↦ ax + b`, `a ≠ 0`, in canonical order.
pub fn agl11_orbit(m: &Matching) -> Vec<Matching> {
    let f = PrimeField::new(11).expect("prime");
    let mut orbit = BTreeSet::new();
    for a in 1..11 {
        for b in 0..11 {
            let pairs: Vec<(usize, usize)> = m
                .pairs()
                .into_iter()
                .map(|(x, y)| {
                    let img = |v: usize| agl_label(agl_image(&f, a, b, v as u32 - 1));
                    (img(x), img(y))
                })
                .collect();
            orbit.insert(Matching::from_pairs(&pairs).expect("image is a matching"));
        }
    }
    orbit.into_iter().collect()
}

/// The 33-element `(4,2)`-factorisation of index 1 of `K_12` invariant under
/// `AGL(1,11)`. Points `0..10` are labelled `1..11` and `∞` is 12.
pub fn agl11_factorisation() -> MatchingSet {
    let mut members = Vec::new();
    for s in agl11_seeds() {
        members.extend(agl11_orbit(&s));
    }
    MatchingSet::new(6, members).expect("orbits are disjoint")
}
