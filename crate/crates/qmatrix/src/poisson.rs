//! The semiclassical shadow: the standard Poisson bracket on the
//! commutative coordinate ring of n×n matrices.
//!
//! The commutative ring is polynomial in variables x\[i,j\] with integer
//! coefficients. The bracket is pinned on generator pairs
//! ([`bracket_generators`]) and extended to arbitrary polynomials by
//! bilinearity and the Leibniz rule ([`bracket`]). For a pair of
//! classical minors the bracket also has three closed forms
//! ([`bracket_minors`]): two single-swap expansions that trade a scalar
//! multiple of the product against row-side or column-side corrections,
//! and their char-≠-2 average, which has no scalar term at all. Finally,
//! [`semiclassical_bracket`] recovers the same values from the
//! noncommutative side: the commutator of the corresponding quantum
//! minors, divided exactly by (q − 1) and evaluated at q = 1.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::Monomial;
use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::minor::minor_element;

/// A commutative monomial in the variables x\[i,j\]: sorted variable →
/// positive exponent pairs. Ordered by total degree, then variable-wise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VarMonomial {
    vars: Vec<((usize, usize), u32)>,
}

impl VarMonomial {
    /// The empty monomial 1.
    pub fn one() -> Self {
        Self::default()
    }

    /// A single variable x\[i,j\].
    pub fn variable(i: usize, j: usize) -> Self {
        Self {
            vars: vec![((i, j), 1)],
        }
    }

    /// The variables with their exponents, sorted.
    pub fn vars(&self) -> &[((usize, usize), u32)] {
        &self.vars
    }

    /// Total degree.
    pub fn degree(&self) -> u64 {
        self.vars.iter().map(|&(_, e)| e as u64).sum()
    }

    /// Abelianization of a noncommutative word: count each letter.
    pub fn from_word(word: &Monomial) -> Self {
        let mut counts: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for g in word.letters() {
            *counts.entry((g.row, g.col)).or_insert(0) += 1;
        }
        Self {
            vars: counts.into_iter().collect(),
        }
    }

    /// Commutative product: merge exponents.
    pub fn mul(&self, other: &Self) -> Self {
        let mut counts: BTreeMap<(usize, usize), u32> = self.vars.iter().copied().collect();
        for &(v, e) in &other.vars {
            *counts.entry(v).or_insert(0) += e;
        }
        Self {
            vars: counts.into_iter().collect(),
        }
    }

    /// The monomial with one power of `var` removed (used by the Leibniz
    /// expansion); `var` must be present.
    fn without_one(&self, var: (usize, usize)) -> Self {
        let mut vars = self.vars.clone();
        let pos = vars
            .iter()
            .position(|&(v, _)| v == var)
            .expect("variable present");
        if vars[pos].1 == 1 {
            vars.remove(pos);
        } else {
            vars[pos].1 -= 1;
        }
        Self { vars }
    }
}

impl Ord for VarMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.vars.cmp(&other.vars))
    }
}

impl PartialOrd for VarMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VarMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .vars
            .iter()
            .map(|&((i, j), e)| {
                if e == 1 {
                    format!("x[{i},{j}]")
                } else {
                    format!("x[{i},{j}]^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// A polynomial in the commuting variables x\[i,j\] over the integers,
/// tagged with its ambient size n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutativePoly {
    n: usize,
    terms: BTreeMap<VarMonomial, BigInt>,
}

impl CommutativePoly {
    /// The zero polynomial.
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The constant 1.
    pub fn one(n: usize) -> Self {
        Self::constant(n, BigInt::one())
    }

    /// A constant polynomial.
    pub fn constant(n: usize, c: BigInt) -> Self {
        let mut out = Self::zero(n);
        out.add_term(VarMonomial::one(), c);
        out
    }

    /// The variable x\[i,j\], validating the position.
    pub fn variable(n: usize, i: usize, j: usize) -> Result<Self> {
        crate::algebra::Generator::new(n, i, j)?;
        let mut out = Self::zero(n);
        out.add_term(VarMonomial::variable(i, j), BigInt::one());
        Ok(out)
    }

    /// Ambient size n.
    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Monomial → coefficient view, in degree-then-variable order.
    pub fn terms(&self) -> impl Iterator<Item = (&VarMonomial, &BigInt)> {
        self.terms.iter()
    }

    /// Number of monomials with nonzero coefficient.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Adds `c` to the coefficient of `mono`, dropping cancelled terms.
    pub fn add_term(&mut self, mono: VarMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Occupied(mut entry) => {
                *entry.get_mut() += c;
                if entry.get().is_zero() {
                    entry.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    /// Multiplies every coefficient by the integer `c`.
    pub fn scale_int(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero(self.n);
        }
        let big = BigInt::from(c);
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * &big))
                .collect(),
        }
    }

    fn assert_same_ambient(&self, other: &Self) {
        assert_eq!(
            self.n, other.n,
            "ambient sizes differ: {} vs {}",
            self.n, other.n
        );
    }
}

impl Add for &CommutativePoly {
    type Output = CommutativePoly;
    fn add(self, rhs: &CommutativePoly) -> CommutativePoly {
        self.assert_same_ambient(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CommutativePoly {
    type Output = CommutativePoly;
    fn sub(self, rhs: &CommutativePoly) -> CommutativePoly {
        self.assert_same_ambient(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &CommutativePoly {
    type Output = CommutativePoly;
    fn mul(self, rhs: &CommutativePoly) -> CommutativePoly {
        self.assert_same_ambient(rhs);
        let mut out = CommutativePoly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &CommutativePoly {
    type Output = CommutativePoly;
    fn neg(self) -> CommutativePoly {
        CommutativePoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for CommutativePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (idx, (mono, coeff)) in self.terms.iter().enumerate() {
            let negative = coeff.is_negative();
            let abs = coeff.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if mono.vars().is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono.to_string());
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        f.write_str(&out)
    }
}

/// The bracket on a pair of generator variables:
///
/// * same position → 0;
/// * same row, columns j < m → x\[i,j\]·x\[i,m\] (antisymmetric in the
///   other order);
/// * same column, rows i < l → x\[i,j\]·x\[l,j\] (antisymmetric);
/// * strictly southeast (i < l, j < m) → 2·x\[i,m\]·x\[l,j\]
///   (antisymmetric for strictly northwest);
/// * strictly southwest or northeast → 0.
pub fn bracket_generators(
    n: usize,
    a: (usize, usize),
    b: (usize, usize),
) -> Result<CommutativePoly> {
    let (i, j) = a;
    let (l, m) = b;
    crate::algebra::Generator::new(n, i, j)?;
    crate::algebra::Generator::new(n, l, m)?;
    let var = |r, c| CommutativePoly::variable(n, r, c).expect("validated position");
    let value = if a == b {
        CommutativePoly::zero(n)
    } else if i == l {
        let prod = &var(i, j) * &var(i, m);
        if j < m {
            prod
        } else {
            -&prod
        }
    } else if j == m {
        let prod = &var(i, j) * &var(l, j);
        if i < l {
            prod
        } else {
            -&prod
        }
    } else if i < l && j < m {
        (&var(i, m) * &var(l, j)).scale_int(2)
    } else if i > l && j > m {
        (&var(l, j) * &var(i, m)).scale_int(-2)
    } else {
        CommutativePoly::zero(n)
    };
    Ok(value)
}

/// The bracket of two polynomials, by bilinearity and the Leibniz rule:
/// {u, v} = Σ over variable occurrences g ∈ u, h ∈ v of
/// e_g·e_h·(u/g)·(v/h)·{g, h}.
pub fn bracket(a: &CommutativePoly, b: &CommutativePoly) -> Result<CommutativePoly> {
    if a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch {
            left: a.ambient(),
            right: b.ambient(),
        });
    }
    let n = a.ambient();
    let mut total = CommutativePoly::zero(n);
    for (u, cu) in a.terms() {
        for (v, cv) in b.terms() {
            for &(g, eg) in u.vars() {
                for &(h, fh) in v.vars() {
                    let base = bracket_generators(n, g, h)?;
                    if base.is_zero() {
                        continue;
                    }
                    let mut rest = CommutativePoly::zero(n);
                    rest.add_term(
                        u.without_one(g).mul(&v.without_one(h)),
                        cu * cv * BigInt::from(eg) * BigInt::from(fh),
                    );
                    total = &total + &(&base * &rest);
                }
            }
        }
    }
    Ok(total)
}

/// The classical minor det(x\[i,j\])_{i∈rows, j∈cols}: the signed
/// permutation sum with (−1)^{inversions}. Empty sets give the constant 1.
pub fn classical_minor(rows: &IndexSet, cols: &IndexSet) -> Result<CommutativePoly> {
    let n = rows.ambient();
    if cols.ambient() != n {
        return Err(Error::AmbientMismatch {
            left: n,
            right: cols.ambient(),
        });
    }
    if rows.len() != cols.len() {
        return Err(Error::CardinalityMismatch {
            left: rows.len(),
            right: cols.len(),
        });
    }
    let t = rows.len();
    if t == 0 {
        return Ok(CommutativePoly::one(n));
    }
    let mut out = CommutativePoly::zero(n);
    for perm in itertools::Itertools::permutations(0..t, t) {
        let inversions = crate::minor::inversions(&perm);
        let mut mono = VarMonomial::one();
        for (k, &p) in perm.iter().enumerate() {
            mono = mono.mul(&VarMonomial::variable(rows.elems()[k], cols.elems()[p]));
        }
        let sign = if inversions % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        out.add_term(mono, sign);
    }
    Ok(out)
}

/// The three closed forms for a bracket of classical minors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum PoissonVariant {
    /// Scalar (|J∩N| − |I∩M|) term plus column swaps (j < n) minus row
    /// swaps (i > m), both doubled.
    T7_3,
    /// Scalar (|I∩M| − |J∩N|) term plus row swaps (i < m) minus column
    /// swaps (j > n), both doubled.
    T7_4,
    /// The average of the other two: four single-swap sums, no scalar
    /// term.
    C7_5,
}

impl PoissonVariant {
    /// All three variants.
    pub fn all() -> [PoissonVariant; 3] {
        [PoissonVariant::T7_3, PoissonVariant::T7_4, PoissonVariant::C7_5]
    }
}

impl fmt::Display for PoissonVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PoissonVariant::T7_3 => "7.6",
            PoissonVariant::T7_4 => "7.8",
            PoissonVariant::C7_5 => "7.9",
        };
        f.write_str(name)
    }
}

impl FromStr for PoissonVariant {
    type Err = Error;

    /// Accepts the numeric labels (`7.6`, `7.8`, `7.9`) and the kind-style
    /// aliases (`T7.3`, `T7.4`, `C7.5`, underscores allowed).
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('_', ".").as_str() {
            "7.6" | "T7.3" => Ok(PoissonVariant::T7_3),
            "7.8" | "T7.4" => Ok(PoissonVariant::T7_4),
            "7.9" | "C7.5" => Ok(PoissonVariant::C7_5),
            _ => Err(Error::UnknownKind(s.to_string())),
        }
    }
}

fn check_minor_pair(
    i_set: &IndexSet,
    j_set: &IndexSet,
    m_set: &IndexSet,
    n_set: &IndexSet,
) -> Result<()> {
    let n = i_set.ambient();
    for s in [j_set, m_set, n_set] {
        if s.ambient() != n {
            return Err(Error::AmbientMismatch {
                left: n,
                right: s.ambient(),
            });
        }
    }
    if i_set.len() != j_set.len() {
        return Err(Error::CardinalityMismatch {
            left: i_set.len(),
            right: j_set.len(),
        });
    }
    if m_set.len() != n_set.len() {
        return Err(Error::CardinalityMismatch {
            left: m_set.len(),
            right: n_set.len(),
        });
    }
    Ok(())
}

/// Sum over single swaps between `x ∈ X∖Y` and `y ∈ Y∖X` on one side of a
/// minor pair. `row_side` selects which descriptor slot is swapped;
/// `lesser` keeps pairs with x < y (else x > y); each term carries
/// (−1)^{|(XΔY) ∩ (lo,hi)|}.
fn swap_sum(
    i_set: &IndexSet,
    j_set: &IndexSet,
    m_set: &IndexSet,
    n_set: &IndexSet,
    row_side: bool,
    lesser: bool,
) -> Result<CommutativePoly> {
    let (x, y) = if row_side {
        (i_set, m_set)
    } else {
        (j_set, n_set)
    };
    let delta = x.sym_diff(y);
    let mut total = CommutativePoly::zero(i_set.ambient());
    for &a in x.minus(y).elems() {
        for &b in y.minus(x).elems() {
            if (lesser && a >= b) || (!lesser && a <= b) {
                continue;
            }
            let (lo, hi) = (a.min(b), a.max(b));
            let sign = if delta.interval_count(lo, hi) % 2 == 0 {
                1
            } else {
                -1
            };
            let term = if row_side {
                &classical_minor(&i_set.swap(a, b)?, j_set)?
                    * &classical_minor(&m_set.swap(b, a)?, n_set)?
            } else {
                &classical_minor(i_set, &j_set.swap(a, b)?)?
                    * &classical_minor(m_set, &n_set.swap(b, a)?)?
            };
            total = &total + &term.scale_int(sign);
        }
    }
    Ok(total)
}

/// The bracket of two classical minors by one of the closed formulas.
pub fn bracket_minors(
    variant: PoissonVariant,
    i_set: &IndexSet,
    j_set: &IndexSet,
    m_set: &IndexSet,
    n_set: &IndexSet,
) -> Result<CommutativePoly> {
    check_minor_pair(i_set, j_set, m_set, n_set)?;
    let product = &classical_minor(i_set, j_set)? * &classical_minor(m_set, n_set)?;
    let q_im = i_set.intersect(m_set).len() as i64;
    let q_jn = j_set.intersect(n_set).len() as i64;
    let col_lt = swap_sum(i_set, j_set, m_set, n_set, false, true)?;
    let col_gt = swap_sum(i_set, j_set, m_set, n_set, false, false)?;
    let row_lt = swap_sum(i_set, j_set, m_set, n_set, true, true)?;
    let row_gt = swap_sum(i_set, j_set, m_set, n_set, true, false)?;
    let value = match variant {
        PoissonVariant::T7_3 => {
            &(&product.scale_int(q_jn - q_im) + &col_lt.scale_int(2)) - &row_gt.scale_int(2)
        }
        PoissonVariant::T7_4 => {
            &(&product.scale_int(q_im - q_jn) + &row_lt.scale_int(2)) - &col_gt.scale_int(2)
        }
        PoissonVariant::C7_5 => {
            &(&(&row_lt - &row_gt) + &col_lt) - &col_gt
        }
    };
    Ok(value)
}

/// The bracket of two minors recovered from the noncommutative side: the
/// commutator of the corresponding quantum minors divided exactly by
/// (q − 1), then evaluated at q = 1 and abelianized.
pub fn semiclassical_bracket(
    i_set: &IndexSet,
    j_set: &IndexSet,
    m_set: &IndexSet,
    n_set: &IndexSet,
) -> Result<CommutativePoly> {
    check_minor_pair(i_set, j_set, m_set, n_set)?;
    let a = minor_element(i_set, j_set)?;
    let b = minor_element(m_set, n_set)?;
    let commutator = &(&a * &b) - &(&b * &a);
    let mut out = CommutativePoly::zero(i_set.ambient());
    for (word, coeff) in commutator.terms() {
        let divided = coeff.exact_div_q_minus_one()?;
        out.add_term(VarMonomial::from_word(word), divided.eval_q_one());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minor::quantum_minor;
    use crate::minor::MinorDescriptor;

    fn set(n: usize, elems: &[usize]) -> IndexSet {
        IndexSet::new(n, elems.iter().copied()).unwrap()
    }

    fn var(n: usize, i: usize, j: usize) -> CommutativePoly {
        CommutativePoly::variable(n, i, j).unwrap()
    }

    #[test]
    fn generator_table() {
        let n = 3;
        assert_eq!(
            bracket_generators(n, (1, 1), (1, 2)).unwrap(),
            &var(n, 1, 1) * &var(n, 1, 2)
        );
        assert_eq!(
            bracket_generators(n, (1, 1), (2, 1)).unwrap(),
            &var(n, 1, 1) * &var(n, 2, 1)
        );
        assert_eq!(
            bracket_generators(n, (1, 1), (2, 2)).unwrap(),
            (&var(n, 1, 2) * &var(n, 2, 1)).scale_int(2)
        );
        assert!(bracket_generators(n, (1, 2), (2, 1)).unwrap().is_zero());
        assert!(bracket_generators(n, (2, 1), (1, 2)).unwrap().is_zero());
        assert!(bracket_generators(n, (2, 2), (2, 2)).unwrap().is_zero());
        // Antisymmetry across the whole table.
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    for d in 1..=n {
                        let fwd = bracket_generators(n, (a, b), (c, d)).unwrap();
                        let rev = bracket_generators(n, (c, d), (a, b)).unwrap();
                        assert_eq!(fwd, -&rev);
                    }
                }
            }
        }
    }

    #[test]
    fn generator_table_is_the_scaled_commutator_limit() {
        // {x_ab, x_cd} must equal [X_ab, X_cd]/(q−1) at q = 1.
        let n = 2;
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    for d in 1..=n {
                        let got = semiclassical_bracket(
                            &set(n, &[a]),
                            &set(n, &[b]),
                            &set(n, &[c]),
                            &set(n, &[d]),
                        )
                        .unwrap();
                        let want = bracket_generators(n, (a, b), (c, d)).unwrap();
                        assert_eq!(got, want, "at x[{a},{b}], x[{c},{d}]");
                    }
                }
            }
        }
    }

    #[test]
    fn classical_minor_two_by_two() {
        let n = 2;
        let m = classical_minor(&set(n, &[1, 2]), &set(n, &[1, 2])).unwrap();
        let want = &(&var(n, 1, 1) * &var(n, 2, 2)) - &(&var(n, 1, 2) * &var(n, 2, 1));
        assert_eq!(m, want);
        assert_eq!(m.to_string(), "x[1,1]*x[2,2] - x[1,2]*x[2,1]");
        assert_eq!(
            classical_minor(&set(n, &[]), &set(n, &[])).unwrap(),
            CommutativePoly::one(n)
        );
    }

    #[test]
    fn quantum_minor_specializes_to_classical() {
        // Setting q = 1 letter-by-letter turns the quantum minor into the
        // classical one.
        let n = 3;
        for t in 1..=n {
            for rows in IndexSet::all_of_size(n, t) {
                for cols in IndexSet::all_of_size(n, t) {
                    let quantum =
                        quantum_minor(&MinorDescriptor::new(rows.clone(), cols.clone()).unwrap());
                    let mut specialized = CommutativePoly::zero(n);
                    for (word, coeff) in quantum.terms() {
                        specialized.add_term(VarMonomial::from_word(word), coeff.eval_q_one());
                    }
                    assert_eq!(specialized, classical_minor(&rows, &cols).unwrap());
                }
            }
        }
    }

    #[test]
    fn bracket_satisfies_leibniz_and_antisymmetry() {
        let n = 2;
        let a = &var(n, 1, 1) + &(&var(n, 1, 2) * &var(n, 2, 1));
        let b = &var(n, 2, 2) + &CommutativePoly::constant(n, 3.into());
        let c = &var(n, 2, 1) * &var(n, 2, 2);
        // {a, bc} = {a,b}c + b{a,c}
        let lhs = bracket(&a, &(&b * &c)).unwrap();
        let rhs = &(&bracket(&a, &b).unwrap() * &c) + &(&b * &bracket(&a, &c).unwrap());
        assert_eq!(lhs, rhs);
        // Antisymmetry and vanishing on equal arguments.
        assert_eq!(bracket(&a, &b).unwrap(), -&bracket(&b, &a).unwrap());
        assert!(bracket(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn bracket_satisfies_jacobi() {
        let n = 3;
        let a = &var(n, 1, 1) * &var(n, 2, 3);
        let b = &var(n, 2, 2) + &var(n, 1, 3);
        let c = &var(n, 3, 1) * &var(n, 3, 3);
        let ab_c = bracket(&bracket(&a, &b).unwrap(), &c).unwrap();
        let bc_a = bracket(&bracket(&b, &c).unwrap(), &a).unwrap();
        let ca_b = bracket(&bracket(&c, &a).unwrap(), &b).unwrap();
        assert!((&(&ab_c + &bc_a) + &ca_b).is_zero());
    }

    #[test]
    fn four_routes_agree_exhaustively_n2() {
        let n = 2;
        for t1 in 1..=n {
            for t2 in 1..=n {
                for i in IndexSet::all_of_size(n, t1) {
                    for j in IndexSet::all_of_size(n, t1) {
                        for m in IndexSet::all_of_size(n, t2) {
                            for nn in IndexSet::all_of_size(n, t2) {
                                let direct = bracket(
                                    &classical_minor(&i, &j).unwrap(),
                                    &classical_minor(&m, &nn).unwrap(),
                                )
                                .unwrap();
                                for variant in PoissonVariant::all() {
                                    assert_eq!(
                                        bracket_minors(variant, &i, &j, &m, &nn).unwrap(),
                                        direct,
                                        "variant {variant} at [{i}|{j}],[{m}|{nn}]"
                                    );
                                }
                                assert_eq!(
                                    semiclassical_bracket(&i, &j, &m, &nn).unwrap(),
                                    direct,
                                    "scaled commutator at [{i}|{j}],[{m}|{nn}]"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn four_routes_agree_spot_n3() {
        let n = 3;
        let cases = [
            ([1, 2], [2, 3], [1, 3], [1, 2]),
            ([1, 3], [1, 2], [2, 3], [1, 3]),
        ];
        for (i, j, m, nn) in cases {
            let i = set(n, &i);
            let j = set(n, &j);
            let m = set(n, &m);
            let nn = set(n, &nn);
            let direct = bracket(
                &classical_minor(&i, &j).unwrap(),
                &classical_minor(&m, &nn).unwrap(),
            )
            .unwrap();
            for variant in PoissonVariant::all() {
                assert_eq!(bracket_minors(variant, &i, &j, &m, &nn).unwrap(), direct);
            }
            assert_eq!(semiclassical_bracket(&i, &j, &m, &nn).unwrap(), direct);
        }
    }

    #[test]
    fn initial_minor_bracket_is_scalar_multiple() {
        // {[1..r|J], [M|1..s]} = (|J∩[1,s]| − |[1,r]∩M|) [1..r|J][M|1..s]:
        // the semiclassical limit of the quasicommutation
        // [1..r|J][M|1..s] = q^m [M|1..s][1..r|J] with the same m.
        let n = 3;
        for r in 1..=n {
            for s in 1..=n {
                for j in IndexSet::all_of_size(n, r) {
                    for m in IndexSet::all_of_size(n, s) {
                        let rows = IndexSet::initial_interval(n, r).unwrap();
                        let cols = IndexSet::initial_interval(n, s).unwrap();
                        let scalar =
                            j.intersect(&cols).len() as i64 - rows.intersect(&m).len() as i64;
                        let product = &classical_minor(&rows, &j).unwrap()
                            * &classical_minor(&m, &cols).unwrap();
                        let direct = bracket(
                            &classical_minor(&rows, &j).unwrap(),
                            &classical_minor(&m, &cols).unwrap(),
                        )
                        .unwrap();
                        assert_eq!(direct, product.scale_int(scalar), "r={r} s={s} J={j} M={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn variant_parsing_and_rendering() {
        assert_eq!("7.6".parse::<PoissonVariant>().unwrap(), PoissonVariant::T7_3);
        assert_eq!("T7.3".parse::<PoissonVariant>().unwrap(), PoissonVariant::T7_3);
        assert_eq!("t7_4".parse::<PoissonVariant>().unwrap(), PoissonVariant::T7_4);
        assert_eq!("C7.5".parse::<PoissonVariant>().unwrap(), PoissonVariant::C7_5);
        assert!("7.7".parse::<PoissonVariant>().is_err());
        assert_eq!(PoissonVariant::T7_4.to_string(), "7.8");
        // Polynomial rendering.
        let n = 2;
        let p = &(&var(n, 1, 1) * &var(n, 1, 1)).scale_int(-2) + &CommutativePoly::one(n);
        assert_eq!(p.to_string(), "1 - 2*x[1,1]^2");
        assert_eq!(CommutativePoly::zero(n).to_string(), "0");
    }

    #[test]
    fn ambient_and_cardinality_validation() {
        let a = CommutativePoly::variable(2, 1, 1).unwrap();
        let b = CommutativePoly::variable(3, 1, 1).unwrap();
        assert!(bracket(&a, &b).is_err());
        assert!(classical_minor(&set(3, &[1, 2]), &set(3, &[1])).is_err());
        assert!(bracket_minors(
            PoissonVariant::T7_3,
            &set(3, &[1]),
            &set(3, &[1]),
            &set(3, &[1, 2]),
            &set(3, &[1])
        )
        .is_err());
        assert!(CommutativePoly::variable(2, 3, 1).is_err());
    }
}
