//! Quantum minors as algebra elements.
//!
//! The minor [I|J] over row set I = {i₁<⋯<i_t} and column set
//! J = {j₁<⋯<j_t} is the alternating sum
//!
//! ```text
//! [I|J] = Σ_{σ∈S_t} (−q)^{ℓ(σ)} X_{i₁ j_{σ(1)}} ⋯ X_{i_t j_{σ(t)}}
//! ```
//!
//! with ℓ(σ) the inversion count. Because the rows ascend strictly, every
//! word in this expansion is already in normal form, so the canonical
//! constructor is straightening-free; the row-permuted expansion (columns
//! fixed, rows permuted) is kept as an independent cross-check that must
//! straighten to the same element.
//!
//! Alongside the constructor this module provides the q-Laplace expansion
//! verdicts, the transpose automorphism τ (X_ij ↦ X_ji) and the
//! anti-transpose anti-automorphism τ₂ (X_ij ↦ X_{n+1−i,n+1−j} with
//! reversed products), and the formal coproduct of a minor. Minors are
//! memoized globally: the relation sweeps rebuild the same descriptors
//! thousands of times.

use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, Mutex};

use itertools::Itertools;

use crate::algebra::{AlgebraElement, Generator, Monomial};
use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::laurent::LaurentPoly;

/// A quantum minor [I|J]: equal-size nonempty row and column sets over the
/// same ambient n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinorDescriptor {
    rows: IndexSet,
    cols: IndexSet,
}

impl MinorDescriptor {
    /// Build a descriptor, validating equal ambient, equal cardinality ≥ 1.
    pub fn new(rows: IndexSet, cols: IndexSet) -> Result<Self> {
        if rows.ambient() != cols.ambient() {
            return Err(Error::AmbientMismatch {
                left: rows.ambient(),
                right: cols.ambient(),
            });
        }
        if rows.len() != cols.len() {
            return Err(Error::CardinalityMismatch {
                left: rows.len(),
                right: cols.len(),
            });
        }
        if rows.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        Ok(Self { rows, cols })
    }

    /// The row index set I.
    pub fn rows(&self) -> &IndexSet {
        &self.rows
    }

    /// The column index set J.
    pub fn cols(&self) -> &IndexSet {
        &self.cols
    }

    /// Ambient size n.
    pub fn ambient(&self) -> usize {
        self.rows.ambient()
    }

    /// Minor size t = |I| = |J|.
    pub fn size(&self) -> usize {
        self.rows.len()
    }
}

impl fmt::Display for MinorDescriptor {
    /// `[23|12]` when n ≤ 9, `[2,3|1,2]` otherwise (matching the CLI
    /// grammar for minor literals).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |set: &IndexSet| {
            if set.ambient() <= 9 {
                set.elems().iter().map(|e| e.to_string()).join("")
            } else {
                set.elems().iter().map(|e| e.to_string()).join(",")
            }
        };
        write!(f, "[{}|{}]", side(&self.rows), side(&self.cols))
    }
}

/// Inversion count of a permutation given as the image vector of 0..t.
pub(crate) fn inversions(perm: &[usize]) -> i64 {
    let mut count = 0;
    for s in 0..perm.len() {
        for t in (s + 1)..perm.len() {
            if perm[s] > perm[t] {
                count += 1;
            }
        }
    }
    count
}

static MINOR_CACHE: LazyLock<Mutex<HashMap<(usize, Vec<usize>, Vec<usize>), AlgebraElement>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The quantum minor [I|J] as a normal-form element.
///
/// Canonical expansion: rows fixed in ascending order, columns permuted,
/// each permutation weighted by (−q) to its inversion count. Results are
/// cached per (n, rows, cols); the fill is idempotent, so concurrent
/// lookups are safe.
pub fn quantum_minor(d: &MinorDescriptor) -> AlgebraElement {
    let key = (
        d.ambient(),
        d.rows.elems().to_vec(),
        d.cols.elems().to_vec(),
    );
    if let Some(hit) = MINOR_CACHE.lock().expect("minor cache lock").get(&key) {
        return hit.clone();
    }
    let n = d.ambient();
    let t = d.size();
    let rows = d.rows.elems();
    let cols = d.cols.elems();
    let element = AlgebraElement::from_terms(
        n,
        (0..t).permutations(t).map(|perm| {
            let word = Monomial::new((0..t).map(|s| Generator {
                row: rows[s],
                col: cols[perm[s]],
            }));
            debug_assert!(word.is_normal());
            (word, LaurentPoly::pow_neg_q(inversions(&perm)))
        }),
    )
    .expect("descriptor indices are in range");
    MINOR_CACHE
        .lock()
        .expect("minor cache lock")
        .insert(key, element.clone());
    element
}

/// The row-permuted expansion of the same minor: columns fixed ascending,
/// rows permuted. Exists solely as an independent cross-check of
/// [`quantum_minor`]; its words are not normal and must be straightened.
pub fn quantum_minor_row_permuted(d: &MinorDescriptor) -> AlgebraElement {
    let n = d.ambient();
    let t = d.size();
    let rows = d.rows.elems();
    let cols = d.cols.elems();
    AlgebraElement::from_terms(
        n,
        (0..t).permutations(t).map(|perm| {
            let word = Monomial::new((0..t).map(|s| Generator {
                row: rows[perm[s]],
                col: cols[s],
            }));
            (word, LaurentPoly::pow_neg_q(inversions(&perm)))
        }),
    )
    .expect("descriptor indices are in range")
}

/// Convenience: the minor element for raw row/column sets.
pub fn minor_element(rows: &IndexSet, cols: &IndexSet) -> Result<AlgebraElement> {
    Ok(quantum_minor(&MinorDescriptor::new(
        rows.clone(),
        cols.clone(),
    )?))
}

/// Checks the row-split Laplace identity: for nonempty I₁, I₂ ⊆ I with
/// |I₁| + |I₂| = |I| = |J|,
///
/// ```text
/// Σ_{J = J₁⊔J₂, |J_l|=|I_l|} (−q)^{ℓ(J₁;J₂)} [I₁|J₁][I₂|J₂]
///     = (−q)^{ℓ(I₁;I₂)} [I|J]   if I₁ ∩ I₂ = ∅,   and 0 otherwise.
/// ```
///
/// Returns whether the identity holds after expansion to normal form.
pub fn laplace_row_check(
    i_set: &IndexSet,
    j_set: &IndexSet,
    i1: &IndexSet,
    i2: &IndexSet,
) -> Result<bool> {
    check_split(i_set, j_set, i1, i2)?;
    let n = i_set.ambient();
    let mut lhs = AlgebraElement::zero(n);
    for j1_elems in j_set.elems().iter().copied().combinations(i1.len()) {
        let j1 = IndexSet::new(n, j1_elems)?;
        let j2 = j_set.minus(&j1);
        let term = (&minor_element(i1, &j1)? * &minor_element(i2, &j2)?)
            .scale(&LaurentPoly::pow_neg_q(j1.ell(&j2) as i64));
        lhs = &lhs + &term;
    }
    let rhs = if i1.intersect(i2).is_empty() {
        minor_element(i_set, j_set)?.scale(&LaurentPoly::pow_neg_q(i1.ell(i2) as i64))
    } else {
        AlgebraElement::zero(n)
    };
    Ok(lhs == rhs)
}

/// Column-split counterpart of [`laplace_row_check`]: for nonempty
/// J₁, J₂ ⊆ J with |J₁| + |J₂| = |J| = |I|,
///
/// ```text
/// Σ_{I = I₁⊔I₂, |I_l|=|J_l|} (−q)^{ℓ(I₁;I₂)} [I₁|J₁][I₂|J₂]
///     = (−q)^{ℓ(J₁;J₂)} [I|J]   if J₁ ∩ J₂ = ∅,   and 0 otherwise.
/// ```
pub fn laplace_col_check(
    i_set: &IndexSet,
    j_set: &IndexSet,
    j1: &IndexSet,
    j2: &IndexSet,
) -> Result<bool> {
    check_split(j_set, i_set, j1, j2)?;
    let n = i_set.ambient();
    let mut lhs = AlgebraElement::zero(n);
    for i1_elems in i_set.elems().iter().copied().combinations(j1.len()) {
        let i1 = IndexSet::new(n, i1_elems)?;
        let i2 = i_set.minus(&i1);
        let term = (&minor_element(&i1, j1)? * &minor_element(&i2, j2)?)
            .scale(&LaurentPoly::pow_neg_q(i1.ell(&i2) as i64));
        lhs = &lhs + &term;
    }
    let rhs = if j1.intersect(j2).is_empty() {
        minor_element(i_set, j_set)?.scale(&LaurentPoly::pow_neg_q(j1.ell(j2) as i64))
    } else {
        AlgebraElement::zero(n)
    };
    Ok(lhs == rhs)
}

/// Validates a Laplace split: parts nonempty, contained in `whole`, sizes
/// summing to |whole| = |other|.
fn check_split(whole: &IndexSet, other: &IndexSet, p1: &IndexSet, p2: &IndexSet) -> Result<()> {
    for set in [other, p1, p2] {
        if set.ambient() != whole.ambient() {
            return Err(Error::AmbientMismatch {
                left: whole.ambient(),
                right: set.ambient(),
            });
        }
    }
    if whole.len() != other.len() {
        return Err(Error::CardinalityMismatch {
            left: whole.len(),
            right: other.len(),
        });
    }
    if p1.is_empty() || p2.is_empty() {
        return Err(Error::Precondition(
            "Laplace split parts must be nonempty".into(),
        ));
    }
    if !p1.is_subset_of(whole) || !p2.is_subset_of(whole) {
        return Err(Error::Precondition(
            "Laplace split parts must be subsets of the split index set".into(),
        ));
    }
    if p1.len() + p2.len() != whole.len() {
        return Err(Error::Precondition(
            "Laplace split part sizes must sum to the full size".into(),
        ));
    }
    Ok(())
}

/// The transpose automorphism τ: X_ij ↦ X_ji extended multiplicatively,
/// then renormalized. Sends [I|J] to [J|I].
pub fn transpose_map(a: &AlgebraElement) -> AlgebraElement {
    AlgebraElement::from_terms(
        a.ambient(),
        a.terms().map(|(mono, coeff)| {
            let word = Monomial::new(mono.letters().iter().map(|g| Generator {
                row: g.col,
                col: g.row,
            }));
            (word, coeff.clone())
        }),
    )
    .expect("transpose preserves index ranges")
}

/// The anti-transpose anti-automorphism τ₂: X_ij ↦ X_{n+1−i, n+1−j} with
/// the order of products reversed, then renormalized. Sends [I|J] to
/// [ω₀I|ω₀J] where ω₀ reverses the index line.
pub fn anti_transpose_map(a: &AlgebraElement) -> AlgebraElement {
    let n = a.ambient();
    AlgebraElement::from_terms(
        n,
        a.terms().map(|(mono, coeff)| {
            let word = Monomial::new(mono.letters().iter().rev().map(|g| Generator {
                row: n + 1 - g.row,
                col: n + 1 - g.col,
            }));
            (word, coeff.clone())
        }),
    )
    .expect("reflection preserves index ranges")
}

/// The formal coproduct of a minor: the list of tensor factors
/// ([I|K], [K|J]) over all K of size |I|, in lexicographic K order.
pub fn minor_coproduct(d: &MinorDescriptor) -> Vec<(MinorDescriptor, MinorDescriptor)> {
    let n = d.ambient();
    IndexSet::all_of_size(n, d.size())
        .into_iter()
        .map(|k| {
            (
                MinorDescriptor::new(d.rows.clone(), k.clone())
                    .expect("sizes match by construction"),
                MinorDescriptor::new(k, d.cols.clone()).expect("sizes match by construction"),
            )
        })
        .collect()
}
