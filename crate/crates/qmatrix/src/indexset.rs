//! Index-set combinatorics.
//!
//! [`IndexSet`] is a strictly increasing sequence of indices inside an
//! ambient interval [1, n]. On top of the set algebra this module provides
//! the statistics that appear as exponents in the commutation relations:
//!
//! * `ell(S, T)` — the inversion count |{(s, t) ∈ S×T : s > t}|;
//! * the elementwise partial order `I ≤ J`;
//! * the reversal ω₀(s) = n+1−s;
//! * the ξ_q product of (−q)-integers;
//! * the ♮-complement S♮ = (X∩Y) ⊔ ((X∪Y)∖S);
//! * the enumeration families `enum_less` / `enum_greater` (all admissible
//!   S strictly below / above X relative to Y);
//! * the ℒ and ℒ♮ exponents built from those families;
//! * open-interval membership counts and weak separation.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// A strictly increasing set of indices in the ambient interval [1, n].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    n: usize,
    elems: Vec<usize>,
}

impl IndexSet {
    /// Build a set from arbitrary elements; they are sorted, must be unique,
    /// and must lie in [1, n].
    pub fn new(n: usize, elems: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut elems: Vec<usize> = elems.into_iter().collect();
        elems.sort_unstable();
        for pair in elems.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateElement { element: pair[0] });
            }
        }
        for &e in &elems {
            if e < 1 || e > n {
                return Err(Error::IndexOutOfRange { index: e, n });
            }
        }
        Ok(Self { n, elems })
    }

    /// The empty set in ambient [1, n].
    pub fn empty(n: usize) -> Self {
        Self { n, elems: Vec::new() }
    }

    /// The full interval {1, …, k} inside ambient [1, n].
    pub fn initial_interval(n: usize, k: usize) -> Result<Self> {
        Self::new(n, 1..=k)
    }

    /// Ambient size n.
    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Elements in ascending order.
    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// Whether the set is empty.
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Membership test.
    pub fn contains(&self, x: usize) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    /// Smallest element, if any.
    pub fn min_elem(&self) -> Option<usize> {
        self.elems.first().copied()
    }

    /// Largest element, if any.
    pub fn max_elem(&self) -> Option<usize> {
        self.elems.last().copied()
    }

    fn assert_same_ambient(&self, other: &Self) {
        assert_eq!(
            self.n, other.n,
            "index sets combined across different ambient sizes"
        );
    }

    /// Set union.
    pub fn union(&self, other: &Self) -> Self {
        self.assert_same_ambient(other);
        let elems = self
            .elems
            .iter()
            .merge(other.elems.iter())
            .dedup()
            .copied()
            .collect();
        Self { n: self.n, elems }
    }

    /// Set intersection.
    pub fn intersect(&self, other: &Self) -> Self {
        self.assert_same_ambient(other);
        let elems = self
            .elems
            .iter()
            .filter(|e| other.contains(**e))
            .copied()
            .collect();
        Self { n: self.n, elems }
    }

    /// Set difference self ∖ other.
    pub fn minus(&self, other: &Self) -> Self {
        self.assert_same_ambient(other);
        let elems = self
            .elems
            .iter()
            .filter(|e| !other.contains(**e))
            .copied()
            .collect();
        Self { n: self.n, elems }
    }

    /// Symmetric difference.
    pub fn sym_diff(&self, other: &Self) -> Self {
        self.union(other).minus(&self.intersect(other))
    }

    /// Whether self ⊆ other.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.elems.iter().all(|e| other.contains(*e))
    }

    /// The set with `x` removed and `y` inserted (used by the single-swap
    /// sums of the generator-minor and Poisson relations).
    pub fn swap(&self, remove: usize, insert: usize) -> Result<Self> {
        if !self.contains(remove) {
            return Err(Error::Precondition(format!(
                "cannot remove {remove}: not a member"
            )));
        }
        if insert != remove && self.contains(insert) {
            return Err(Error::DuplicateElement { element: insert });
        }
        let elems = self
            .elems
            .iter()
            .copied()
            .filter(|&e| e != remove)
            .chain(std::iter::once(insert));
        Self::new(self.n, elems)
    }

    /// Inversion count ℓ(S; T) = |{(s, t) ∈ S×T : s > t}|.
    pub fn ell(&self, other: &Self) -> usize {
        self.elems
            .iter()
            .map(|s| other.elems.iter().filter(|t| s > t).count())
            .sum()
    }

    /// The elementwise partial order: I ≤ J iff i_l ≤ j_l at every position.
    ///
    /// Only defined between sets of equal cardinality.
    pub fn leq_order(&self, other: &Self) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::CardinalityMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self
            .elems
            .iter()
            .zip(other.elems.iter())
            .all(|(a, b)| a <= b))
    }

    /// Strict version of [`leq_order`](Self::leq_order).
    pub fn lt_order(&self, other: &Self) -> Result<bool> {
        Ok(self.leq_order(other)? && self != other)
    }

    /// The order-reversing image {n+1−s : s ∈ S}.
    pub fn omega0(&self) -> Self {
        let elems = self.elems.iter().rev().map(|s| self.n + 1 - s).collect();
        Self { n: self.n, elems }
    }

    /// |S ∩ (a, b)| with (a, b) an open interval.
    pub fn interval_count(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < b, "interval_count expects a < b");
        self.elems.iter().filter(|&&s| a < s && s < b).count()
    }

    /// All subsets of [1, n] of the given size, in lexicographic order.
    pub fn all_of_size(n: usize, size: usize) -> Vec<Self> {
        (1..=n)
            .combinations(size)
            .map(|elems| Self { n, elems })
            .collect()
    }

    fn set_text(&self) -> String {
        format!("{{{}}}", self.elems.iter().join(","))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.set_text())
    }
}

/// ξ_q(I; J): the product of (−q)-integers [d_1]⋯[d_m] where, writing
/// I = {r_1 < ⋯ < r_m}, d_l = |[1, r_l] ∩ J| − l + 1.
///
/// Defined when |I| = |J| and J ≤ I elementwise (which makes every d_l ≥ 1);
/// ξ_q(∅; ∅) = 1.
pub fn xi_q(i: &IndexSet, j: &IndexSet) -> Result<LaurentPoly> {
    let mut product = LaurentPoly::one();
    for d in xi_degrees(i, j)? {
        product = &product * &LaurentPoly::neg_q_integer(d)?;
    }
    Ok(product)
}

/// The degrees d_l of the (−q)-integer factors of ξ_q(I; J), in row order:
/// d_l = |[1, i_l] ∩ J| − l + 1 for I = {i₁ < ⋯ < i_k}. Defined when J ≤ I;
/// every degree is then ≥ 1.
pub fn xi_degrees(i: &IndexSet, j: &IndexSet) -> Result<Vec<i64>> {
    let leq = j.leq_order(i)?;
    if !leq {
        return Err(Error::XiUndefined {
            i: i.to_string(),
            j: j.to_string(),
        });
    }
    let mut degrees = Vec::with_capacity(i.len());
    for (l, r) in i.elems().iter().enumerate() {
        let below = j.elems().iter().filter(|&&x| x <= *r).count();
        let d = below as i64 - l as i64;
        debug_assert!(d >= 1, "J <= I forces every d_l >= 1");
        degrees.push(d);
    }
    Ok(degrees)
}

/// The ♮-complement S♮ = (X∩Y) ⊔ ((X∪Y)∖S).
///
/// Requires X∩Y ⊆ S ⊆ X∪Y. When |S| = |X| the result has cardinality |Y|.
pub fn natural_complement(s: &IndexSet, x: &IndexSet, y: &IndexSet) -> Result<IndexSet> {
    let meet = x.intersect(y);
    let join = x.union(y);
    if !meet.is_subset_of(s) || !s.is_subset_of(&join) {
        return Err(Error::Precondition(format!(
            "natural complement requires {meet} <= {s} <= {join}"
        )));
    }
    Ok(meet.union(&join.minus(s)))
}

/// All admissible candidate sets for the pair (X, Y): the S with
/// X∩Y ⊆ S ⊆ X∪Y and |S| = |X|, in lexicographic order.
fn candidates(x: &IndexSet, y: &IndexSet) -> Vec<IndexSet> {
    let meet = x.intersect(y);
    let free = x.union(y).minus(&meet);
    if x.len() < meet.len() {
        return Vec::new();
    }
    let choose = x.len() - meet.len();
    let mut out: Vec<IndexSet> = free
        .elems()
        .iter()
        .copied()
        .combinations(choose)
        .map(|extra| {
            let set = IndexSet::new(x.ambient(), meet.elems().iter().copied().chain(extra))
                .expect("candidate elements are distinct and in range");
            set
        })
        .collect();
    out.sort();
    out
}

/// The sets strictly below X: all S with X∩Y ⊆ S ⊆ X∪Y, |S| = |X| and
/// S < X in the elementwise order (X itself excluded), lexicographically.
pub fn enum_less(x: &IndexSet, y: &IndexSet) -> Vec<IndexSet> {
    candidates(x, y)
        .into_iter()
        .filter(|s| s.lt_order(x).expect("candidates share cardinality with X"))
        .collect()
}

/// The sets strictly above X under the same constraints.
pub fn enum_greater(x: &IndexSet, y: &IndexSet) -> Vec<IndexSet> {
    candidates(x, y)
        .into_iter()
        .filter(|s| x.lt_order(s).expect("candidates share cardinality with X"))
        .collect()
}

fn check_member_or_x(s: &IndexSet, x: &IndexSet, y: &IndexSet, family: &[IndexSet]) -> Result<()> {
    if s == x || family.contains(s) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{s} is not an admissible index set for the pair ({x}, {y})"
        )))
    }
}

/// The exponent ℒ(S, X, Y) = ℓ((S∖S♮) ∪ (Y∖X); X∖S) − ℓ((S∖S♮) ∪ (Y∖X); S∖X).
///
/// Defined for S ∈ `enum_less(X, Y)` ∪ {X}.
pub fn l_exponent(s: &IndexSet, x: &IndexSet, y: &IndexSet) -> Result<i64> {
    check_member_or_x(s, x, y, &enum_less(x, y))?;
    let s_nat = natural_complement(s, x, y)?;
    let left = s.minus(&s_nat).union(&y.minus(x));
    Ok(left.ell(&x.minus(s)) as i64 - left.ell(&s.minus(x)) as i64)
}

/// The exponent ℒ♮(T, X, Y) = ℓ((T♮∖T) ∪ (X∖Y); T∖X) − ℓ((T♮∖T) ∪ (X∖Y); X∖T).
///
/// Defined for T ∈ `enum_greater(X, Y)` ∪ {X}.
pub fn lnat_exponent(t: &IndexSet, x: &IndexSet, y: &IndexSet) -> Result<i64> {
    check_member_or_x(t, x, y, &enum_greater(x, y))?;
    let t_nat = natural_complement(t, x, y)?;
    let left = t_nat.minus(t).union(&x.minus(y));
    Ok(left.ell(&t.minus(x)) as i64 - left.ell(&x.minus(t)) as i64)
}

/// Weak separation of J from N: J∖N splits as J'⊔J'' with
/// max(J') < min(N∖J) ≤ max(N∖J) < min(J'') (either part may be empty).
pub fn weakly_separated(j: &IndexSet, n: &IndexSet) -> bool {
    separation_split(j, n).is_some()
}

/// The canonical split (|J'|, |J''|) witnessing weak separation, if any.
///
/// Every element of J∖N below min(N∖J) is forced into J', every element
/// above max(N∖J) into J''; weak separation holds iff nothing is left over.
pub fn separation_split(j: &IndexSet, n: &IndexSet) -> Option<(usize, usize)> {
    let d = j.minus(n);
    let e = n.minus(j);
    let (Some(lo), Some(hi)) = (e.min_elem(), e.max_elem()) else {
        // N∖J empty: the separation condition is vacuous and all of J∖N sits in J'.
        return Some((d.len(), 0));
    };
    let below = d.elems().iter().filter(|&&x| x < lo).count();
    let above = d.elems().iter().filter(|&&x| x > hi).count();
    if below + above == d.len() {
        Some((below, above))
    } else {
        None
    }
}
