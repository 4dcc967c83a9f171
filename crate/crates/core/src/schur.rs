//! Brute-force symmetric functions: Schur polynomials as tableau generating
//! functions, Kostka numbers, and Schur-basis expansion by leading-monomial
//! elimination.
//!
//! Nothing here is fast. This module is the ground truth the [`crate::lr`]
//! engine is checked against, so it shares no code with it.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::young::Partition;
use crate::Limits;

/// Exponent vector over a fixed alphabet.
pub type Monomial = Vec<u32>;

/// Integer polynomial in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPolynomial {
    pub fn zero(nvars: usize) -> Self {
        IntPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], BigInt::one())
    }

    pub fn monomial(exponents: Monomial, coeff: BigInt) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, coeff);
        p
    }

    /// The variable `x_i` (zero-based).
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exponents: Monomial, coeff: BigInt) {
        assert_eq!(exponents.len(), self.nvars, "monomial over the wrong alphabet");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        IntPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// The lexicographically largest monomial.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Product of polynomials in disjoint alphabets: exponent vectors are
    /// concatenated.
    pub fn outer(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut out = Self::zero(self.nvars + other.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut m = a.clone();
                m.extend_from_slice(b);
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// Invariance under every permutation of the variables, checked on orbit
    /// representatives: each coefficient must equal that of its sorted
    /// exponent vector.
    pub fn is_symmetric(&self) -> bool {
        self.is_block_symmetric(&[self.nvars])
    }

    /// Invariance under permutations inside each block of variables.
    pub fn is_block_symmetric(&self, blocks: &[usize]) -> bool {
        if blocks.iter().sum::<usize>() != self.nvars {
            return false;
        }
        self.terms.iter().all(|(m, c)| {
            let sorted = sort_blocks_descending(m, blocks);
            self.terms.get(&sorted) == Some(c)
        })
    }
}

fn sort_blocks_descending(m: &[u32], blocks: &[usize]) -> Monomial {
    let mut out = Vec::with_capacity(m.len());
    let mut start = 0;
    for &b in blocks {
        let mut chunk = m[start..start + b].to_vec();
        chunk.sort_unstable_by(|x, y| y.cmp(x));
        out.extend(chunk);
        start += b;
    }
    out
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = IntPolynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let m = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

/// A semistandard filling; `rows[i][j]` is the entry in row `i`, column `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    pub shape: Partition,
    pub rows: Vec<Vec<u32>>,
}

impl Tableau {
    /// How many times each of `1..=alphabet` occurs.
    pub fn content(&self, alphabet: usize) -> Vec<u32> {
        let mut c = vec![0; alphabet];
        for &v in self.rows.iter().flatten() {
            c[v as usize - 1] += 1;
        }
        c
    }

    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self
            .rows
            .iter()
            .all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self.rows.windows(2).all(|pair| {
            pair[1]
                .iter()
                .zip(&pair[0])
                .all(|(below, above)| below > above)
        });
        let shape_ok = self.rows.len() == self.shape.length()
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, r)| r.len() == self.shape.part(i) as usize);
        rows_ok && cols_ok && shape_ok && self.rows.iter().flatten().all(|&v| v >= 1)
    }
}

/// Number of SSYT of shape `shape` with entries at most `n`, by the
/// hook-content formula. Used only to decide whether an enumeration is
/// affordable.
pub fn hook_content_count(shape: &Partition, n: usize) -> BigUint {
    if shape.length() > n {
        return BigUint::zero();
    }
    let conj = shape.conjugate();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (i, &row) in shape.parts().iter().enumerate() {
        for j in 0..row as usize {
            num *= BigUint::from(n + j - i);
            let hook = (row as usize - j) + (conj.part(j) as usize - i) - 1;
            den *= BigUint::from(hook);
        }
    }
    num / den
}

fn guard(what: &'static str, predicted: &BigUint, limit: usize) -> Result<()> {
    if predicted > &BigUint::from(limit) {
        return Err(Error::ResourceLimit {
            what,
            needed: predicted.to_string(),
            limit,
        });
    }
    Ok(())
}

/// Every semistandard tableau of shape `shape` with entries in
/// `1..=max_entry`, in lexicographic order of the row-reading word.
pub fn ssyt_enumerate(shape: &Partition, max_entry: usize, limits: &Limits) -> Result<Vec<Tableau>> {
    if max_entry == 0 {
        return Err(Error::Precondition("max_entry must be at least 1".into()));
    }
    guard(
        "semistandard tableaux",
        &hook_content_count(shape, max_entry),
        limits.schur_monomials,
    )?;
    let mut out = Vec::new();
    if shape.length() > max_entry {
        return Ok(out);
    }
    let conj = shape.conjugate();
    let mut rows: Vec<Vec<u32>> = shape
        .parts()
        .iter()
        .map(|&p| Vec::with_capacity(p as usize))
        .collect();
    fill(shape, &conj, max_entry as u32, 0, &mut rows, &mut |t| {
        out.push(Tableau {
            shape: shape.clone(),
            rows: t.to_vec(),
        })
    });
    Ok(out)
}

fn fill(
    shape: &Partition,
    conj: &Partition,
    max: u32,
    row: usize,
    rows: &mut Vec<Vec<u32>>,
    emit: &mut dyn FnMut(&[Vec<u32>]),
) {
    if row == shape.length() {
        emit(rows);
        return;
    }
    let col = rows[row].len();
    if col == shape.part(row) as usize {
        fill(shape, conj, max, row + 1, rows, emit);
        return;
    }
    let left = if col > 0 { rows[row][col - 1] } else { 1 };
    let above = if row > 0 { rows[row - 1][col] + 1 } else { 1 };
    // leave room for the strictly increasing cells still below in this column
    let below = conj.part(col) - row as u32 - 1;
    let hi = max - below;
    for v in left.max(above)..=hi {
        rows[row].push(v);
        fill(shape, conj, max, row, rows, emit);
        rows[row].pop();
    }
}

/// `s_shape(x_1, ..., x_nvars) = Σ_T x^{content(T)}`.
pub fn schur_polynomial(shape: &Partition, nvars: usize, limits: &Limits) -> Result<IntPolynomial> {
    if nvars == 0 {
        return Err(Error::Precondition("nvars must be at least 1".into()));
    }
    let mut p = IntPolynomial::zero(nvars);
    for t in ssyt_enumerate(shape, nvars, limits)? {
        p.add_term(t.content(nvars), BigInt::one());
    }
    Ok(p)
}

/// Number of SSYT of shape `shape` and content `content`, counted as chains
/// of horizontal strips `∅ ⊂ λ¹ ⊂ ⋯ ⊂ shape` with `|λⁱ/λⁱ⁻¹| = content_i`.
pub fn kostka(shape: &Partition, content: &[u32]) -> BigUint {
    if shape.size() != content.iter().map(|&c| c as usize).sum::<usize>() {
        return BigUint::zero();
    }
    let mut memo = BTreeMap::new();
    strips(shape, &Partition::empty(), content, &mut memo)
}

fn strips(
    target: &Partition,
    current: &Partition,
    content: &[u32],
    memo: &mut BTreeMap<(Partition, usize), BigUint>,
) -> BigUint {
    let Some((&first, rest)) = content.split_first() else {
        return if current == target {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    };
    let key = (current.clone(), content.len());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let rows = target.length();
    let mut total = BigUint::zero();
    let mut next = vec![0u32; rows];
    add_strip(target, current, 0, first, &mut next, &mut |mu| {
        total += strips(target, mu, rest, memo);
    });
    memo.insert(key, total.clone());
    total
}

/// Enumerates `μ` with `current ⊆ μ ⊆ target`, `μ/current` a horizontal
/// strip of exactly `remaining` boxes.
fn add_strip(
    target: &Partition,
    current: &Partition,
    row: usize,
    remaining: u32,
    next: &mut Vec<u32>,
    emit: &mut dyn FnMut(&Partition),
) {
    if row == next.len() {
        if remaining == 0 {
            emit(&Partition::new(next.clone()).expect("interlacing keeps rows sorted"));
        }
        return;
    }
    let lo = current.part(row);
    let mut hi = target.part(row);
    if row > 0 {
        hi = hi.min(current.part(row - 1));
    }
    if hi < lo {
        return;
    }
    for v in lo..=hi.min(lo + remaining) {
        next[row] = v;
        add_strip(target, current, row + 1, remaining - (v - lo), next, emit);
    }
}

/// Schur-basis coefficients of a symmetric polynomial.
pub fn expand_in_schur(p: &IntPolynomial, nvars: usize, limits: &Limits) -> Result<BTreeMap<Partition, BigInt>> {
    if p.nvars() != nvars {
        return Err(Error::LengthMismatch(format!(
            "polynomial has {} variables, expected {nvars}",
            p.nvars()
        )));
    }
    Ok(expand_in_schur_blocks(p, &[nvars], limits)?
        .into_iter()
        .map(|(mut k, v)| (k.pop().expect("one block"), v))
        .collect())
}

/// Coefficients of `p` in the basis `∏_i s_{λ_i}(block i)` for a polynomial
/// symmetric within each block of variables.
///
/// Repeatedly removes the lexicographically leading monomial; for a
/// block-symmetric polynomial that monomial is a tuple of partitions and it is
/// also the leading monomial of the corresponding product of Schur
/// polynomials.
pub fn expand_in_schur_blocks(
    p: &IntPolynomial,
    blocks: &[usize],
    limits: &Limits,
) -> Result<BTreeMap<Vec<Partition>, BigInt>> {
    if !p.is_block_symmetric(blocks) {
        return Err(Error::NotSymmetric(format!(
            "not invariant under permutations within blocks {blocks:?}"
        )));
    }
    let mut cache: BTreeMap<(Partition, usize), IntPolynomial> = BTreeMap::new();
    let mut rest = p.clone();
    let mut out = BTreeMap::new();
    while let Some((lead, coeff)) = rest.leading() {
        let coeff = coeff.clone();
        let mut labels = Vec::with_capacity(blocks.len());
        let mut product = IntPolynomial::one(0);
        let mut start = 0;
        for &b in blocks {
            let shape = Partition::new(lead[start..start + b].to_vec())
                .map_err(|e| Error::NotSymmetric(format!("leading monomial is not dominant: {e}")))?;
            let key = (shape.clone(), b);
            if !cache.contains_key(&key) {
                cache.insert(key.clone(), schur_polynomial(&shape, b, limits)?);
            }
            product = product.outer(&cache[&key]);
            labels.push(shape);
            start += b;
        }
        rest = &rest - &product.scale(&coeff);
        out.insert(labels, coeff);
    }
    Ok(out)
}

/// Every branching multiplicity of `Res^{GL_c}_{GL_{c_1} × ⋯ × GL_{c_m}} ρ_c^F`,
/// keyed by the tuple of labels, computed by splitting the variables of
/// `s_F` into blocks.
pub fn branching_table(
    f: &Partition,
    arm_sizes: &[usize],
    limits: &Limits,
) -> Result<BTreeMap<Vec<Partition>, BigUint>> {
    if arm_sizes.is_empty() || arm_sizes.contains(&0) {
        return Err(Error::Precondition("arm sizes must be positive".into()));
    }
    let c: usize = arm_sizes.iter().sum();
    if f.length() > c {
        return Err(Error::TooManyRows {
            diagram: f.to_string(),
            length: f.length(),
            bound: c,
        });
    }
    let s = schur_polynomial(f, c, limits)?;
    expand_in_schur_blocks(&s, arm_sizes, limits)?
        .into_iter()
        .map(|(k, v)| {
            if v.is_negative() {
                Err(Error::Precondition(format!(
                    "negative branching coefficient {v} for {k:?}"
                )))
            } else {
                Ok((k, v.to_biguint().expect("nonnegative")))
            }
        })
        .collect()
}

/// Multiplicity of `ρ_{c_1}^{D_1} ⊗ ⋯ ⊗ ρ_{c_m}^{D_m}` in `ρ_c^F`.
pub fn branch_via_specialization(
    f: &Partition,
    arm_sizes: &[usize],
    labels: &[Partition],
    limits: &Limits,
) -> Result<BigUint> {
    if arm_sizes.len() != labels.len() {
        return Err(Error::LengthMismatch(format!(
            "{} arms but {} labels",
            arm_sizes.len(),
            labels.len()
        )));
    }
    for (d, &c) in labels.iter().zip(arm_sizes) {
        if d.length() > c {
            return Err(Error::TooManyRows {
                diagram: d.to_string(),
                length: d.length(),
                bound: c,
            });
        }
    }
    if f.size() != labels.iter().map(Partition::size).sum::<usize>() {
        return Ok(BigUint::zero());
    }
    let table = branching_table(f, arm_sizes, limits)?;
    Ok(table.get(labels).cloned().unwrap_or_default())
}

/// Convenience for tests and the CLI: a small coefficient as `u64`.
pub fn to_u64(x: &BigInt) -> Option<u64> {
    x.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    /// Fills every box with every value in 1..=m and keeps semistandard ones.
    fn brute_force_ssyt(shape: &Partition, m: u32) -> Vec<Vec<Vec<u32>>> {
        let cells: Vec<(usize, usize)> = shape
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r as usize).map(move |j| (i, j)))
            .collect();
        let total = (m as usize).pow(cells.len() as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut rows: Vec<Vec<u32>> = shape.parts().iter().map(|&r| vec![0; r as usize]).collect();
            let mut c = code;
            for &(i, j) in &cells {
                rows[i][j] = (c % m as usize) as u32 + 1;
                c /= m as usize;
            }
            let t = Tableau {
                shape: shape.clone(),
                rows,
            };
            if t.is_semistandard() {
                out.push(t.rows);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn ssyt_examples() {
        assert_eq!(ssyt_enumerate(&p(&[1]), 3, &lim()).unwrap().len(), 3);
        assert_eq!(brute_force_ssyt(&p(&[2, 1]), 3).len(), 8);
        assert_eq!(ssyt_enumerate(&p(&[2, 1]), 3, &lim()).unwrap().len(), 8);
        assert_eq!(ssyt_enumerate(&p(&[1, 1, 1]), 2, &lim()).unwrap().len(), 0);
        assert_eq!(ssyt_enumerate(&Partition::empty(), 2, &lim()).unwrap().len(), 1);
        assert!(ssyt_enumerate(&p(&[1]), 0, &lim()).is_err());
    }

    #[test]
    fn ssyt_matches_brute_force_and_is_ordered() {
        for shape in Partition::all_up_to(5, 3) {
            for m in 1..=3u32 {
                let fast: Vec<Vec<Vec<u32>>> = ssyt_enumerate(&shape, m as usize, &lim())
                    .unwrap()
                    .into_iter()
                    .map(|t| {
                        assert!(t.is_semistandard());
                        t.rows
                    })
                    .collect();
                let mut sorted = fast.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(fast, sorted, "order/duplicates for {shape} m={m}");
                assert_eq!(fast, brute_force_ssyt(&shape, m), "{shape} m={m}");
                assert_eq!(
                    BigUint::from(fast.len()),
                    hook_content_count(&shape, m as usize)
                );
            }
        }
    }

    #[test]
    fn resource_guard_trips() {
        let tight = Limits {
            schur_monomials: 5,
            ..Limits::default()
        };
        let err = ssyt_enumerate(&p(&[2, 1]), 3, &tight).unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn schur_examples() {
        let s1 = schur_polynomial(&p(&[1]), 2, &lim()).unwrap();
        let x1 = IntPolynomial::variable(2, 0);
        let x2 = IntPolynomial::variable(2, 1);
        assert_eq!(s1, &x1 + &x2);
        assert_eq!(schur_polynomial(&p(&[1, 1]), 2, &lim()).unwrap(), &x1 * &x2);
        let expected = &(&(&x1 * &x1) * &x2) + &(&(&x1 * &x2) * &x2);
        assert_eq!(schur_polynomial(&p(&[2, 1]), 2, &lim()).unwrap(), expected);
        assert!(schur_polynomial(&p(&[1, 1, 1]), 2, &lim()).unwrap().is_zero());
    }

    #[test]
    fn schur_polynomials_are_symmetric() {
        for n in 1..=4 {
            for shape in Partition::all_up_to(8, n) {
                let s = schur_polynomial(&shape, n, &lim()).unwrap();
                for (m, c) in s.terms() {
                    for i in 0..n.saturating_sub(1) {
                        let mut swapped = m.clone();
                        swapped.swap(i, i + 1);
                        assert_eq!(&s.coefficient(&swapped), c, "{shape} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&p(&[2, 1]), &[1, 1, 1]), BigUint::from(2u32));
        assert_eq!(kostka(&p(&[2, 1]), &[2, 1]), BigUint::from(1u32));
        assert_eq!(kostka(&p(&[4]), &[4, 0, 0]), BigUint::from(1u32));
        assert_eq!(kostka(&p(&[2, 1]), &[1, 1]), BigUint::zero());
        assert_eq!(kostka(&p(&[1, 1]), &[2]), BigUint::zero());
    }

    #[test]
    fn kostka_symmetric_in_content_and_sums_to_count() {
        for shape in Partition::all_up_to(5, 3) {
            let m = 3;
            let mut total = BigUint::zero();
            let n = shape.size() as u32;
            for a in 0..=n {
                for b in 0..=n - a {
                    let c = n - a - b;
                    let k = kostka(&shape, &[a, b, c]);
                    assert_eq!(k, kostka(&shape, &[c, a, b]));
                    assert_eq!(k, kostka(&shape, &[b, a, c]));
                    total += k;
                }
            }
            assert_eq!(
                total,
                BigUint::from(ssyt_enumerate(&shape, m, &lim()).unwrap().len())
            );
        }
    }

    #[test]
    fn expansion_examples() {
        let s1 = schur_polynomial(&p(&[1]), 2, &lim()).unwrap();
        let e = expand_in_schur(&(&s1 * &s1), 2, &lim()).unwrap();
        let want: BTreeMap<Partition, BigInt> =
            [(p(&[2]), BigInt::one()), (p(&[1, 1]), BigInt::one())].into();
        assert_eq!(e, want);

        let a = schur_polynomial(&p(&[1, 1]), 3, &lim()).unwrap();
        let b = schur_polynomial(&p(&[1]), 3, &lim()).unwrap();
        let e = expand_in_schur(&(&a * &b), 3, &lim()).unwrap();
        let want: BTreeMap<Partition, BigInt> =
            [(p(&[2, 1]), BigInt::one()), (p(&[1, 1, 1]), BigInt::one())].into();
        assert_eq!(e, want);

        assert!(expand_in_schur(&IntPolynomial::zero(3), 3, &lim()).unwrap().is_empty());
        let x1 = IntPolynomial::variable(2, 0);
        assert!(matches!(
            expand_in_schur(&x1, 2, &lim()),
            Err(Error::NotSymmetric(_))
        ));
    }

    #[test]
    fn schur_expands_to_itself() {
        for n in 1..=4 {
            for shape in Partition::all_up_to(8, n) {
                let s = schur_polynomial(&shape, n, &lim()).unwrap();
                let e = expand_in_schur(&s, n, &lim()).unwrap();
                assert_eq!(e.len(), 1, "{shape}");
                assert_eq!(e[&shape], BigInt::one());
            }
        }
    }

    #[test]
    fn branching_examples() {
        let l = lim();
        assert_eq!(
            branch_via_specialization(&p(&[1]), &[1, 1], &[p(&[1]), Partition::empty()], &l).unwrap(),
            BigUint::one()
        );
        assert_eq!(
            branch_via_specialization(&p(&[2, 1]), &[1, 1, 1], &[p(&[1]), p(&[1]), p(&[1])], &l)
                .unwrap(),
            BigUint::from(2u32)
        );
        assert_eq!(
            branch_via_specialization(&p(&[1, 1]), &[2], &[p(&[2])], &l).unwrap(),
            BigUint::zero()
        );
        assert!(branch_via_specialization(&p(&[1, 1]), &[1, 1], &[p(&[1, 1]), Partition::empty()], &l)
            .is_err());
    }

    #[test]
    fn branching_dimensions_add_up() {
        // dim ρ_c^F equals Σ mult · Π dim ρ_{c_i}^{D_i}; dims from tableau counts
        let l = lim();
        for shape in Partition::all_up_to(4, 3) {
            let table = branching_table(&shape, &[2, 1], &l).unwrap();
            let mut total = BigUint::zero();
            for (labels, mult) in &table {
                total += mult
                    * hook_content_count(&labels[0], 2)
                    * hook_content_count(&labels[1], 1);
            }
            assert_eq!(total, hook_content_count(&shape, 3), "{shape}");
        }
    }
}
