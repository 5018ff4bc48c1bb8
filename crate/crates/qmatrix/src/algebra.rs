//! The quantized matrix algebra as normal-form arithmetic.
//!
//! Elements are stored in the PBW basis: every monomial is a word of
//! generators X_ij sorted nondecreasingly by (row, col). Products are
//! straightened by repeatedly rewriting the leftmost out-of-order adjacent
//! pair with the defining relations
//!
//! ```text
//! X_ij X_im = q X_im X_ij                 (j < m, same row)
//! X_ij X_lj = q X_lj X_ij                 (i < l, same column)
//! X_ij X_lm = X_lm X_ij                   (i < l, j > m)
//! X_ij X_lm − X_lm X_ij = q̂ X_im X_lj    (i < l, j < m)
//! ```
//!
//! Each rewrite replaces a word by words that are strictly smaller in the
//! lexicographic word order, so the worklist terminates; the implementation
//! asserts that decrease on every step, turning any nontermination bug into
//! a loud failure. Canonicity of the resulting normal form (Bergman's
//! diamond lemma for quantum matrices) is what makes structural equality of
//! [`AlgebraElement`]s semantic equality, and is itself exercised by the
//! associativity tests.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// A generator X_ij, identified by its (row, col) position in [1, n]².
///
/// The derived ordering is lexicographic on (row, col); normal form means
/// words sorted nondecreasingly in this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub row: usize,
    pub col: usize,
}

impl Generator {
    /// Construct X_ij, validating 1 ≤ i, j ≤ n.
    pub fn new(n: usize, row: usize, col: usize) -> Result<Self> {
        if row < 1 || row > n {
            return Err(Error::IndexOutOfRange { index: row, n });
        }
        if col < 1 || col > n {
            return Err(Error::IndexOutOfRange { index: col, n });
        }
        Ok(Self { row, col })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X[{},{}]", self.row, self.col)
    }
}

/// A word in the generators. Sorted words are normal (PBW basis elements).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    word: Vec<Generator>,
}

impl Monomial {
    /// The empty word (the identity element).
    pub fn empty() -> Self {
        Self::default()
    }

    /// Build a word from generators (in the given, possibly unsorted, order).
    pub fn new(word: impl IntoIterator<Item = Generator>) -> Self {
        Self {
            word: word.into_iter().collect(),
        }
    }

    /// The letters of the word.
    pub fn letters(&self) -> &[Generator] {
        &self.word
    }

    /// Word length (total degree).
    pub fn len(&self) -> usize {
        self.word.len()
    }

    /// Whether this is the empty word.
    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Whether the word is sorted nondecreasingly (normal form).
    pub fn is_normal(&self) -> bool {
        self.first_descent().is_none()
    }

    /// Position of the leftmost adjacent out-of-order pair, if any.
    fn first_descent(&self) -> Option<usize> {
        self.word.windows(2).position(|w| w[0] > w[1])
    }

    /// Concatenation.
    fn concat(&self, other: &Self) -> Self {
        Self::new(self.word.iter().chain(other.word.iter()).copied())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for g in &self.word {
            if !first {
                f.write_str("*")?;
            }
            write!(f, "{g}")?;
            first = false;
        }
        Ok(())
    }
}

/// Rewrites the out-of-order pair at positions (k, k+1), returning the
/// replacement words with their coefficient factors.
///
/// Every replacement is strictly smaller than the input in lexicographic
/// word order, which is the termination measure asserted by the caller.
fn reduce_at(mono: &Monomial, k: usize) -> Vec<(Monomial, LaurentPoly)> {
    let hi = mono.word[k];
    let lo = mono.word[k + 1];
    debug_assert!(hi > lo);
    let mut swapped = mono.word.clone();
    swapped.swap(k, k + 1);
    let swapped = Monomial { word: swapped };

    if hi.row == lo.row || hi.col == lo.col {
        // Same row (or column): X_hi X_lo = q⁻¹ X_lo X_hi.
        vec![(swapped, LaurentPoly::q_pow(-1))]
    } else if hi.row > lo.row && hi.col < lo.col {
        // Antidiagonal positions commute.
        vec![(swapped, LaurentPoly::one())]
    } else {
        // hi.row > lo.row and hi.col > lo.col:
        // X_ab X_cd = X_cd X_ab − q̂ X_cb X_ad   (a>c, b>d).
        let mut extra = mono.word.clone();
        extra[k] = Generator {
            row: lo.row,
            col: hi.col,
        };
        extra[k + 1] = Generator {
            row: hi.row,
            col: lo.col,
        };
        vec![
            (swapped, LaurentPoly::one()),
            (
                Monomial { word: extra },
                &LaurentPoly::zero() - &LaurentPoly::qhat(),
            ),
        ]
    }
}

/// An element of the algebra over ambient size n, stored as a canonical map
/// from normal-form monomial to nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<Monomial, LaurentPoly>,
}

impl AlgebraElement {
    /// The zero element.
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The identity element.
    pub fn one(n: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::empty(), LaurentPoly::one());
        Self { n, terms }
    }

    /// The generator X_ij as an element.
    pub fn generator(n: usize, row: usize, col: usize) -> Result<Self> {
        let g = Generator::new(n, row, col)?;
        Ok(Self::from_terms(
            n,
            [(Monomial::new([g]), LaurentPoly::one())],
        )
        .expect("generator word is valid"))
    }

    /// A constant element.
    pub fn constant(n: usize, c: LaurentPoly) -> Self {
        Self::from_terms(n, [(Monomial::empty(), c)]).expect("empty word is valid")
    }

    /// Build an element from raw (word, coefficient) pairs, straightening
    /// every word to normal form. Words may be arbitrary; indices are
    /// validated against the ambient size.
    pub fn from_terms(
        n: usize,
        items: impl IntoIterator<Item = (Monomial, LaurentPoly)>,
    ) -> Result<Self> {
        let mut pending: BTreeMap<Monomial, LaurentPoly> = BTreeMap::new();
        for (mono, coeff) in items {
            for g in mono.letters() {
                Generator::new(n, g.row, g.col)?;
            }
            merge_term(&mut pending, mono, coeff);
        }
        let mut terms: BTreeMap<Monomial, LaurentPoly> = BTreeMap::new();
        // Worklist straightening: always reduce the currently largest word.
        // Every rewrite produces strictly smaller words, so pops happen in
        // strictly descending order and the loop terminates.
        while let Some((mono, coeff)) = pending.pop_last() {
            if coeff.is_zero() {
                continue;
            }
            match mono.first_descent() {
                None => merge_term(&mut terms, mono, coeff),
                Some(k) => {
                    for (word, factor) in reduce_at(&mono, k) {
                        assert!(
                            word < mono,
                            "straightening must strictly decrease the word order"
                        );
                        merge_term(&mut pending, word, &coeff * &factor);
                    }
                }
            }
        }
        Ok(Self { n, terms })
    }

    /// Ambient size n.
    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Whether this is the zero element.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate (monomial, coefficient) pairs in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &LaurentPoly)> {
        self.terms.iter()
    }

    /// Number of normal-form terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient of a monomial (zero if absent).
    pub fn coefficient(&self, mono: &Monomial) -> LaurentPoly {
        self.terms.get(mono).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Sum, validating matching ambient sizes.
    pub fn add_checked(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut terms = self.terms.clone();
        for (mono, coeff) in &other.terms {
            merge_term(&mut terms, mono.clone(), coeff.clone());
        }
        Ok(Self { n: self.n, terms })
    }

    /// Product, validating matching ambient sizes; fully straightened.
    pub fn mul_checked(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Self::from_terms(
            self.n,
            self.terms.iter().flat_map(|(ma, ca)| {
                other
                    .terms
                    .iter()
                    .map(move |(mb, cb)| (ma.concat(mb), ca * cb))
            }),
        )
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &LaurentPoly) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// The common (row, column) multidegree if the element is homogeneous.
    ///
    /// Returns vectors of length n counting occurrences of each row and
    /// column index; `None` if two terms disagree. The zero element is
    /// reported with zero degree.
    pub fn grading(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let degree = |mono: &Monomial| {
            let mut rows = vec![0i64; self.n];
            let mut cols = vec![0i64; self.n];
            for g in mono.letters() {
                rows[g.row - 1] += 1;
                cols[g.col - 1] += 1;
            }
            (rows, cols)
        };
        let mut common: Option<(Vec<i64>, Vec<i64>)> = None;
        for mono in self.terms.keys() {
            let d = degree(mono);
            match &common {
                None => common = Some(d),
                Some(existing) if *existing == d => {}
                Some(_) => return None,
            }
        }
        Some(common.unwrap_or_else(|| (vec![0; self.n], vec![0; self.n])))
    }

    /// Structural equality of canonical forms.
    pub fn equals(&self, other: &Self) -> bool {
        self == other
    }
}

fn merge_term(map: &mut BTreeMap<Monomial, LaurentPoly>, mono: Monomial, coeff: LaurentPoly) {
    if coeff.is_zero() {
        return;
    }
    match map.entry(mono) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = &*o.get() + &coeff;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.add_checked(rhs).expect("ambient sizes must match")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self + &(-rhs)
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.mul_checked(rhs).expect("ambient sizes must match")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for AlgebraElement {
    /// Canonical text form, re-parseable by the expression grammar: terms in
    /// ascending monomial order, coefficients per the Laurent grammar
    /// (parenthesized when they have several terms), generators as `X[i,j]`
    /// joined by `*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (mono, coeff) in &self.terms {
            let (negative, body) = term_text(mono, coeff);
            if first {
                if negative {
                    f.write_str("-")?;
                }
                first = false;
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            f.write_str(&body)?;
        }
        Ok(())
    }
}

/// Renders one (monomial, coefficient) term; returns (sign, unsigned text).
fn term_text(mono: &Monomial, coeff: &LaurentPoly) -> (bool, String) {
    if mono.is_empty() {
        // Constant term: single-term coefficients carry their sign out;
        // multi-term ones are parenthesized verbatim.
        return match coeff.as_single_term() {
            Some(_) => {
                let neg = coeff.to_string().starts_with('-');
                let text = coeff.to_string();
                (neg, text.trim_start_matches('-').to_string())
            }
            None => (false, format!("({coeff})")),
        };
    }
    if coeff.is_one() {
        return (false, mono.to_string());
    }
    match coeff.as_single_term() {
        Some(_) => {
            let text = coeff.to_string();
            let neg = text.starts_with('-');
            let unsigned = text.trim_start_matches('-');
            if unsigned == "1" {
                (neg, mono.to_string())
            } else {
                (neg, format!("{unsigned}*{mono}"))
            }
        }
        None => (false, format!("({coeff})*{mono}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gen(n: usize, i: usize, j: usize) -> AlgebraElement {
        AlgebraElement::generator(n, i, j).unwrap()
    }

    fn q_pow(e: i64) -> LaurentPoly {
        LaurentPoly::q_pow(e)
    }

    #[test]
    fn same_row_straightening() {
        // X₁₂·X₁₁ = q⁻¹ X₁₁X₁₂
        let product = &gen(2, 1, 2) * &gen(2, 1, 1);
        let expected = (&gen(2, 1, 1) * &gen(2, 1, 2)).scale(&q_pow(-1));
        assert_eq!(product, expected);
    }

    #[test]
    fn same_column_straightening() {
        // X₂₁·X₁₁ = q⁻¹ X₁₁X₂₁
        let product = &gen(2, 2, 1) * &gen(2, 1, 1);
        let expected = (&gen(2, 1, 1) * &gen(2, 2, 1)).scale(&q_pow(-1));
        assert_eq!(product, expected);
    }

    #[test]
    fn antidiagonal_commute() {
        let product = &gen(2, 2, 1) * &gen(2, 1, 2);
        let reverse = &gen(2, 1, 2) * &gen(2, 2, 1);
        assert_eq!(product, reverse);
    }

    #[test]
    fn diagonal_straightening() {
        // X₂₂·X₁₁ = X₁₁X₂₂ − q̂ X₁₂X₂₁
        let product = &gen(2, 2, 2) * &gen(2, 1, 1);
        let main = &gen(2, 1, 1) * &gen(2, 2, 2);
        let correction = (&gen(2, 1, 2) * &gen(2, 2, 1)).scale(&LaurentPoly::qhat());
        assert_eq!(product, &main - &correction);
        // and the identity X₁₁X₂₂ = X₂₂X₁₁ + q̂X₁₂X₂₁ re-read left to right
        let rebuilt = &(&gen(2, 2, 2) * &gen(2, 1, 1)) + &correction;
        assert_eq!(rebuilt, main);
    }

    #[test]
    fn already_normal_products_stay_put() {
        let product = &gen(2, 1, 1) * &gen(2, 2, 2);
        assert_eq!(product.term_count(), 1);
        let (mono, coeff) = product.terms().next().unwrap();
        assert!(mono.is_normal());
        assert!(coeff.is_one());
    }

    #[test]
    fn ambient_mismatch_detected() {
        assert!(gen(2, 1, 1).mul_checked(&gen(3, 1, 1)).is_err());
        assert!(gen(2, 1, 1).add_checked(&gen(3, 1, 1)).is_err());
    }

    #[test]
    fn addition_and_cancellation() {
        let a = &gen(2, 1, 1) * &gen(2, 2, 2);
        assert_eq!(&a - &a, AlgebraElement::zero(2));
        assert_eq!(&a + &AlgebraElement::zero(2), a);
        assert!(AlgebraElement::zero(2).equals(&AlgebraElement::zero(2)));
    }

    #[test]
    fn grading_examples() {
        let x12 = gen(3, 1, 2);
        assert_eq!(
            x12.grading(),
            Some((vec![1, 0, 0], vec![0, 1, 0]))
        );
        let det = &(&gen(2, 1, 1) * &gen(2, 2, 2))
            - &(&gen(2, 1, 2) * &gen(2, 2, 1)).scale(&LaurentPoly::q());
        assert_eq!(det.grading(), Some((vec![1, 1], vec![1, 1])));
        let inhomogeneous = &gen(2, 1, 1) + &gen(2, 1, 2);
        assert_eq!(inhomogeneous.grading(), None);
    }

    #[test]
    fn grading_additivity() {
        let a = &gen(3, 1, 2) * &gen(3, 2, 3);
        let b = &gen(3, 3, 1) * &gen(3, 2, 2);
        let (ar, ac) = a.grading().unwrap();
        let (br, bc) = b.grading().unwrap();
        let (pr, pc) = (&a * &b).grading().unwrap();
        for k in 0..3 {
            assert_eq!(pr[k], ar[k] + br[k]);
            assert_eq!(pc[k], ac[k] + bc[k]);
        }
    }

    #[test]
    fn associativity_spot_check() {
        let a = &gen(3, 3, 1) * &gen(3, 2, 2);
        let b = &gen(3, 1, 3) * &gen(3, 2, 1);
        let c = &gen(3, 3, 3) * &gen(3, 1, 1);
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn rendering_round_trip_shapes() {
        let det = &(&gen(2, 1, 1) * &gen(2, 2, 2))
            - &(&gen(2, 1, 2) * &gen(2, 2, 1)).scale(&LaurentPoly::q());
        assert_eq!(det.to_string(), "X[1,1]*X[2,2] - q*X[1,2]*X[2,1]");
        let with_qhat = (&gen(2, 1, 2) * &gen(2, 2, 1)).scale(&LaurentPoly::qhat());
        assert_eq!(with_qhat.to_string(), "(q - q^-1)*X[1,2]*X[2,1]");
        assert_eq!(AlgebraElement::zero(2).to_string(), "0");
        assert_eq!(
            AlgebraElement::constant(2, LaurentPoly::int(-3)).to_string(),
            "-3"
        );
    }

    fn arb_short_element(n: usize) -> impl Strategy<Value = AlgebraElement> {
        let word = proptest::collection::vec((1..=n, 1..=n), 0..3);
        proptest::collection::vec((word, -3i64..=3), 0..3).prop_map(move |raw| {
            let mut total = AlgebraElement::zero(n);
            for (letters, c) in raw {
                let mut term = AlgebraElement::constant(n, LaurentPoly::int(c));
                for (row, col) in letters {
                    term = &term * &AlgebraElement::generator(n, row, col).unwrap();
                }
                total = &total + &term;
            }
            total
        })
    }

    proptest! {
        #[test]
        fn multiplication_is_associative_and_distributive(
            a in arb_short_element(2),
            b in arb_short_element(2),
            c in arb_short_element(2),
        ) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        }

        #[test]
        fn scalars_are_central(a in arb_short_element(2)) {
            let scalar = AlgebraElement::constant(2, LaurentPoly::qhat());
            prop_assert_eq!(&scalar * &a, &a * &scalar);
        }
    }
}
