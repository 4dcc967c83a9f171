//! Exact rank computations.
//!
//! Rational rows are cleared of denominators and reduced fraction-free over
//! the integers; each stored pivot row is kept primitive (content divided
//! out) so entries stay small. Finite-field helpers work over `F_p` for
//! small primes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A sparse integer row: column index to nonzero entry.
pub type SparseRow = BTreeMap<usize, BigInt>;

/// Incremental fraction-free row echelon form over the integers.
#[derive(Debug, Default, Clone)]
pub struct IntegerEchelon {
    // leading column -> primitive row whose first entry is positive
    pivots: BTreeMap<usize, SparseRow>,
}

impl IntegerEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the stored pivots and keeps it if it is
    /// independent. Returns whether the rank grew.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                return false;
            };
            let Some(pivot) = self.pivots.get(&lead) else {
                make_primitive(&mut row);
                self.pivots.insert(lead, row);
                return true;
            };
            let a = pivot[&lead].clone();
            let b = row[&lead].clone();
            let g = a.gcd(&b);
            let (sa, sb) = (&a / &g, &b / &g);
            // row <- sa*row - sb*pivot, which clears the lead entry
            for v in row.values_mut() {
                *v *= &sa;
            }
            for (&col, pv) in pivot {
                let entry = row.entry(col).or_insert_with(BigInt::zero);
                *entry -= &sb * pv;
            }
            row.retain(|_, v| !v.is_zero());
        }
    }

    /// Whether `row` lies in the span of the stored rows.
    pub fn contains(&self, row: &SparseRow) -> bool {
        let mut probe = self.clone();
        !probe.insert(row.clone())
    }
}

fn make_primitive(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
    }
    if g.is_zero() {
        return;
    }
    let negate = row.values().next().is_some_and(|v| v.is_negative());
    for v in row.values_mut() {
        *v /= &g;
        if negate {
            *v = -&*v;
        }
    }
}

/// Rank of a family of sparse integer rows.
pub fn rank_sparse<I: IntoIterator<Item = SparseRow>>(rows: I) -> usize {
    let mut ech = IntegerEchelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Clears denominators of a rational vector, returning a sparse integer row
/// spanning the same line.
pub fn integer_row(row: &[BigRational]) -> SparseRow {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.numer() * (&lcm / x.denom())))
        .collect()
}

/// Rank of dense rational rows.
pub fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    rank_sparse(rows.iter().map(|r| integer_row(r)))
}

/// Rank of dense rows over `F_p`. Entries must already be reduced mod `p`.
pub fn rank_mod_p(rows: &[Vec<u32>], p: u32) -> usize {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = inverse_mod_p(m[rank][col], p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Multiplicative inverse of a nonzero residue modulo a prime.
pub fn inverse_mod_p(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    (1..p).find(|&x| a * x % p == 1).expect("p is prime")
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}
