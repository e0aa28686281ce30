//! Full-rank sublattices of `Z²` in Hermite normal form.

use crate::arith::{ext_gcd, gcd};

/// A full-rank sublattice `Γ ⊆ Z²` with HNF basis columns `(a, 0)` and
/// `(b, c)`, where `a, c > 0` and `0 <= b < a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sublattice {
    a: i128,
    b: i128,
    c: i128,
}

impl Sublattice {
    /// The HNF of the `Z`-span of `gens`. Returns `None` when the span does not
    /// have rank two.
    pub fn from_generators<I>(gens: I) -> Option<Sublattice>
    where
        I: IntoIterator<Item = (i128, i128)>,
    {
        let mut a = 0i128;
        let mut pivot: Option<(i128, i128)> = None;
        for (x, y) in gens {
            if y == 0 {
                a = gcd(a, x);
                continue;
            }
            match pivot {
                None => pivot = Some((x, y)),
                Some((px, py)) => {
                    let (g, s, t) = ext_gcd(py, y);
                    let mut nx = s * px + t * x;
                    // (y/g)·pivot - (py/g)·v has zero second coordinate.
                    let rx = (y / g) * px - (py / g) * x;
                    a = gcd(a, rx);
                    if a != 0 {
                        nx = nx.rem_euclid(a);
                    }
                    pivot = Some((nx, g));
                }
            }
            if let (Some((px, py)), true) = (pivot, a != 0) {
                pivot = Some((px.rem_euclid(a), py));
            }
        }
        let (px, py) = pivot?;
        if a == 0 {
            return None;
        }
        let (px, c) = if py < 0 { (-px, -py) } else { (px, py) };
        Some(Sublattice {
            a,
            b: px.rem_euclid(a),
            c,
        })
    }

    /// `n·Z²`.
    pub fn scaled_identity(n: i128) -> Sublattice {
        assert!(n > 0);
        Sublattice { a: n, b: 0, c: n }
    }

    /// Basis as a row-major 2×2 matrix `[[a, b], [0, c]]`; columns generate.
    pub fn basis(&self) -> [[i128; 2]; 2] {
        [[self.a, self.b], [0, self.c]]
    }

    pub fn columns(&self) -> [(i128, i128); 2] {
        [(self.a, 0), (self.b, self.c)]
    }

    /// `[Z² : Γ] = |det|`.
    pub fn index(&self) -> u128 {
        (self.a * self.c) as u128
    }

    /// Canonical coset representative `(x', y')` with `0 <= x' < a`, `0 <= y' < c`.
    pub fn reduce(&self, (x, y): (i128, i128)) -> (i128, i128) {
        let yr = y.rem_euclid(self.c);
        let q = (y - yr) / self.c;
        ((x - q * self.b).rem_euclid(self.a), yr)
    }

    /// Coset number in `0..index`.
    pub fn coset_id(&self, v: (i128, i128)) -> u128 {
        let (x, y) = self.reduce(v);
        (y * self.a + x) as u128
    }

    /// The representative with the given coset number.
    pub fn coset_rep(&self, id: u128) -> (i128, i128) {
        let id = id as i128;
        (id % self.a, id / self.a)
    }

    pub fn contains(&self, v: (i128, i128)) -> bool {
        self.reduce(v) == (0, 0)
    }

    pub fn a(&self) -> i128 {
        self.a
    }
    pub fn b(&self) -> i128 {
        self.b
    }
    pub fn c(&self) -> i128 {
        self.c
    }

    /// For a lattice row `y ≡ 0 (mod c)`, the residue of `x` modulo `a` that
    /// puts `(x, y)` in the lattice.
    pub fn row_offset(&self, y: i128) -> Option<i128> {
        (y.rem_euclid(self.c) == 0).then(|| ((y / self.c) * self.b).rem_euclid(self.a))
    }
}
