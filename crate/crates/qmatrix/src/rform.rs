//! The coquasitriangular bilinear form **r** on the quantized matrix
//! bialgebra.
//!
//! Three layers, deliberately independent of one another:
//!
//! * [`r_base`] — the generator-pair table: r(X_ii, X_ii) = q,
//!   r(X_ii, X_jj) = 1 for i ≠ j, r(X_ij, X_ji) = q̂ for i > j, else 0.
//! * [`r_oracle`] — a brute-force recursive evaluator that extends the base
//!   table to arbitrary word pairs using only the defining bialgebra
//!   axioms r(ab, c) = Σ r(a, c₁) r(b, c₂) and
//!   r(a, bc) = Σ r(a₁, c) r(a₂, b), with the matrix coproduct
//!   Δ(X_ij) = Σ_k X_ik ⊗ X_kj. It is exponential by design and exists to
//!   make the closed formula falsifiable.
//! * [`r_minor_closed`] — the closed product formula for minor pairs:
//!   r([I|J], [M|N]) vanishes unless J ≤ I, I∩M = J∩N, and I∪M = J∪N, and
//!   otherwise equals q^{|I∩M|} · q̂^{|I∖J|} · (−q)^λ · ξ_q(I∖J; J∖I) with
//!   λ = ℓ((J∖N)∪(M∖I); I∖J) − ℓ((J∖N)∪(M∖I); J∖I).
//!
//! The oracle and the closed form share nothing but the base table and the
//! Laurent arithmetic; their agreement is exercised exhaustively in the
//! acceptance suite.

use std::collections::HashMap;
use std::fmt;

use crate::algebra::{AlgebraElement, Generator, Monomial};
use crate::error::{Error, Result};
use crate::indexset::{xi_degrees, IndexSet};
use crate::laurent::LaurentPoly;

/// The form on a pair of generators.
///
/// Nonzero exactly on: equal diagonal pairs (value q), distinct diagonal
/// pairs (value 1), and transposed pairs X_ij, X_ji with i > j (value q̂).
pub fn r_base(g: Generator, h: Generator) -> LaurentPoly {
    if g.row == g.col && h.row == h.col {
        if g.row == h.row {
            LaurentPoly::q()
        } else {
            LaurentPoly::one()
        }
    } else if g.row > g.col && h.row == g.col && h.col == g.row {
        LaurentPoly::qhat()
    } else {
        LaurentPoly::zero()
    }
}

/// Call-local evaluation context: the memo table is shared across the
/// recursion of a single top-level evaluation and dropped afterwards.
struct OracleContext {
    memo: HashMap<(Monomial, Monomial), LaurentPoly>,
}

impl OracleContext {
    fn new() -> Self {
        Self {
            memo: HashMap::new(),
        }
    }

    /// r on a pair of nonempty words.
    fn eval(&mut self, u: &Monomial, v: &Monomial) -> LaurentPoly {
        debug_assert!(!u.is_empty() && !v.is_empty());
        let key = (u.clone(), v.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let value = if v.len() == 1 {
            chain_walk(u.letters(), v.letters()[0])
        } else {
            self.peel_last(u, v)
        };
        self.memo.insert(key, value.clone());
        value
    }

    /// Splitting off the last letter of v: r(u, v′·X_cd) = Σ over middle
    /// column vectors k⃗ of r(X_{a₁k₁}⋯X_{a_tk_t}, X_cd) ·
    /// r(X_{k₁b₁}⋯X_{k_tb_t}, v′), where u = X_{a₁b₁}⋯X_{a_tb_t}.
    ///
    /// For each k⃗ the first factor is a single forced chain (or zero), so
    /// the sum is explored as a depth-first walk with at most two
    /// admissible choices of k_s per position: keep the letter diagonal
    /// (k_s = a_s, chain state unchanged) or absorb the chain state
    /// (k_s = state < a_s, state jumps to a_s, gate q̂).
    fn peel_last(&mut self, u: &Monomial, v: &Monomial) -> LaurentPoly {
        let letters = v.letters();
        let last = letters[letters.len() - 1];
        let v_init = Monomial::new(letters[..letters.len() - 1].iter().copied());
        let rows: Vec<usize> = u.letters().iter().map(|g| g.row).collect();
        let cols: Vec<usize> = u.letters().iter().map(|g| g.col).collect();
        let t = rows.len();
        let mut total = LaurentPoly::zero();
        // (position, chain state, accumulated gate product, chosen k prefix)
        let mut stack: Vec<(usize, usize, LaurentPoly, Vec<usize>)> =
            vec![(0, last.row, LaurentPoly::one(), Vec::with_capacity(t))];
        while let Some((pos, state, gates, kvec)) = stack.pop() {
            if pos == t {
                if state == last.col {
                    let shifted = Monomial::new(
                        kvec.iter()
                            .zip(&cols)
                            .map(|(&k, &b)| Generator { row: k, col: b }),
                    );
                    let inner = self.eval(&shifted, &v_init);
                    total = &total + &(&gates * &inner);
                }
                continue;
            }
            let a = rows[pos];
            // Diagonal choice: k_s = a_s, state passes through.
            {
                let gate = if a == state {
                    LaurentPoly::q()
                } else {
                    LaurentPoly::one()
                };
                let mut kv = kvec.clone();
                kv.push(a);
                stack.push((pos + 1, state, &gates * &gate, kv));
            }
            // Absorbing choice: k_s = state with state < a_s, state jumps.
            if state < a {
                let mut kv = kvec;
                kv.push(state);
                stack.push((pos + 1, a, &gates * &LaurentPoly::qhat(), kv));
            }
        }
        total
    }
}

/// r(u, X_lm) as the chain sum over l = k₀, …, k_t = m of
/// Π_s r_base(u_s, X_{k_{s−1} k_s}).
///
/// For a fixed word the chain is forced: a diagonal letter keeps the state
/// (gate q exactly when the letter sits on the state), a subdiagonal letter
/// X_ab requires state = b and jumps it to a (gate q̂), and a superdiagonal
/// letter kills the value. So the sum is a single product or zero.
fn chain_walk(word: &[Generator], target: Generator) -> LaurentPoly {
    let mut state = target.row;
    let mut product = LaurentPoly::one();
    for g in word {
        if g.row == g.col {
            if g.row == state {
                product = &product * &LaurentPoly::q();
            }
        } else if g.row > g.col {
            if state != g.col {
                return LaurentPoly::zero();
            }
            state = g.row;
            product = &product * &LaurentPoly::qhat();
        } else {
            return LaurentPoly::zero();
        }
    }
    if state == target.col {
        product
    } else {
        LaurentPoly::zero()
    }
}

/// The form on a pair of words, by brute-force recursion from the axioms.
///
/// Both words must be nonempty, or both empty (value 1); pairing an empty
/// word against a nonempty one is rejected as out of contract.
pub fn r_oracle_words(n: usize, u: &Monomial, v: &Monomial) -> Result<LaurentPoly> {
    for g in u.letters().iter().chain(v.letters()) {
        Generator::new(n, g.row, g.col)?;
    }
    match (u.is_empty(), v.is_empty()) {
        (true, true) => Ok(LaurentPoly::one()),
        (false, false) => Ok(OracleContext::new().eval(u, v)),
        _ => Err(Error::EmptyWordPairing),
    }
}

/// The form on a pair of elements, extended bilinearly over [`r_oracle_words`].
///
/// The word-pair memo is shared across all term pairs of one call and
/// discarded when it returns.
pub fn r_oracle(a: &AlgebraElement, b: &AlgebraElement) -> Result<LaurentPoly> {
    if a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch {
            left: a.ambient(),
            right: b.ambient(),
        });
    }
    let mut ctx = OracleContext::new();
    let mut total = LaurentPoly::zero();
    for (u, cu) in a.terms() {
        for (v, cv) in b.terms() {
            let pair = match (u.is_empty(), v.is_empty()) {
                (true, true) => LaurentPoly::one(),
                (false, false) => ctx.eval(u, v),
                _ => return Err(Error::EmptyWordPairing),
            };
            total = &total + &(&(cu * cv) * &pair);
        }
    }
    Ok(total)
}

/// The value r([I|J], [M|N]) in factored form: either zero, or
/// q^a · q̂^b · (−q)^c · Π_l [d_l]_{−q} with the factor data kept separate
/// for display and for exact expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RFactorization {
    zero: bool,
    q_exp: i64,
    qhat_exp: i64,
    neg_q_exp: i64,
    xi_degrees: Vec<i64>,
}

impl RFactorization {
    /// Whether the value is identically zero.
    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// Exponent of q (that is, |I∩M|) when nonzero.
    pub fn q_exp(&self) -> i64 {
        self.q_exp
    }

    /// Exponent of q̂ (that is, |I∖J|) when nonzero.
    pub fn qhat_exp(&self) -> i64 {
        self.qhat_exp
    }

    /// Exponent λ of (−q) when nonzero.
    pub fn neg_q_exp(&self) -> i64 {
        self.neg_q_exp
    }

    /// Degrees of the (−q)-integer factors of ξ_q(I∖J; J∖I).
    pub fn xi_factor_degrees(&self) -> &[i64] {
        &self.xi_degrees
    }

    /// Multiply the factors out to a canonical Laurent polynomial.
    pub fn expand(&self) -> LaurentPoly {
        if self.zero {
            return LaurentPoly::zero();
        }
        let mut value = LaurentPoly::q_pow(self.q_exp);
        for _ in 0..self.qhat_exp {
            value = &value * &LaurentPoly::qhat();
        }
        value = &value * &LaurentPoly::pow_neg_q(self.neg_q_exp);
        for &d in &self.xi_degrees {
            value = &value
                * &LaurentPoly::neg_q_integer(d).expect("factor degrees are positive");
        }
        value
    }
}

impl fmt::Display for RFactorization {
    /// Factored text like `q^2 * qhat^3 * (-q)^-3 * (q^2 + 1 + q^-2) * (-q - q^-1)`;
    /// exponent-zero factors and trivial ξ factors are omitted, and an
    /// entirely trivial product renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        for (base, exp) in [("q", self.q_exp), ("qhat", self.qhat_exp), ("(-q)", self.neg_q_exp)] {
            match exp {
                0 => {}
                1 => parts.push(base.to_string()),
                _ => parts.push(format!("{base}^{exp}")),
            }
        }
        for &d in &self.xi_degrees {
            if d >= 2 {
                let factor = LaurentPoly::neg_q_integer(d).expect("degree at least one");
                parts.push(format!("({factor})"));
            }
        }
        if parts.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&parts.join(" * "))
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

/// The closed formula for r([I|J], [M|N]) in factored form.
///
/// Zero unless J ≤ I (elementwise), I∩M = J∩N, and I∪M = J∪N; otherwise
/// the factored product with q-exponent |I∩M|, q̂-exponent |I∖J|,
/// (−q)-exponent λ = ℓ((J∖N)∪(M∖I); I∖J) − ℓ((J∖N)∪(M∖I); J∖I), and ξ
/// factors from ξ_q(I∖J; J∖I). Empty index-set pairs are admitted and
/// degenerate to the Kronecker value: r([∅|∅], [M|N]) = δ(M, N).
pub fn r_minor_factored(
    i_set: &IndexSet,
    j_set: &IndexSet,
    m_set: &IndexSet,
    n_set: &IndexSet,
) -> Result<RFactorization> {
    check_minor_pair(i_set, j_set, m_set, n_set)?;
    let admissible = j_set.leq_order(i_set)?
        && i_set.intersect(m_set) == j_set.intersect(n_set)
        && i_set.union(m_set) == j_set.union(n_set);
    if !admissible {
        return Ok(RFactorization {
            zero: true,
            q_exp: 0,
            qhat_exp: 0,
            neg_q_exp: 0,
            xi_degrees: Vec::new(),
        });
    }
    let i_minus_j = i_set.minus(j_set);
    let j_minus_i = j_set.minus(i_set);
    let weight = j_set.minus(n_set).union(&m_set.minus(i_set));
    let lambda = weight.ell(&i_minus_j) as i64 - weight.ell(&j_minus_i) as i64;
    let degrees = xi_degrees(&i_minus_j, &j_minus_i)?;
    Ok(RFactorization {
        zero: false,
        q_exp: i_set.intersect(m_set).len() as i64,
        qhat_exp: i_minus_j.len() as i64,
        neg_q_exp: lambda,
        xi_degrees: degrees,
    })
}

/// The closed formula for r([I|J], [M|N]) as a canonical Laurent polynomial.
pub fn r_minor_closed(
    i_set: &IndexSet,
    j_set: &IndexSet,
    m_set: &IndexSet,
    n_set: &IndexSet,
) -> Result<LaurentPoly> {
    Ok(r_minor_factored(i_set, j_set, m_set, n_set)?.expand())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minor::{minor_element, quantum_minor, MinorDescriptor};

    fn set(n: usize, elems: &[usize]) -> IndexSet {
        IndexSet::new(n, elems.iter().copied()).unwrap()
    }

    fn g(i: usize, j: usize) -> Generator {
        Generator { row: i, col: j }
    }

    fn gen_el(n: usize, i: usize, j: usize) -> AlgebraElement {
        AlgebraElement::generator(n, i, j).unwrap()
    }

    #[test]
    fn base_table() {
        assert_eq!(r_base(g(1, 1), g(1, 1)), LaurentPoly::q());
        assert_eq!(r_base(g(1, 1), g(2, 2)), LaurentPoly::one());
        assert_eq!(r_base(g(2, 1), g(1, 2)), LaurentPoly::qhat());
        assert!(r_base(g(1, 2), g(2, 1)).is_zero());
        assert!(r_base(g(1, 2), g(1, 2)).is_zero());
        assert!(r_base(g(1, 1), g(1, 2)).is_zero());
        assert!(r_base(g(2, 1), g(2, 1)).is_zero());
    }

    #[test]
    fn oracle_on_single_letters_matches_base_table() {
        for i in 1..=3 {
            for j in 1..=3 {
                for l in 1..=3 {
                    for m in 1..=3 {
                        let via_oracle = r_oracle_words(
                            3,
                            &Monomial::new([g(i, j)]),
                            &Monomial::new([g(l, m)]),
                        )
                        .unwrap();
                        assert_eq!(via_oracle, r_base(g(i, j), g(l, m)));
                    }
                }
            }
        }
    }

    #[test]
    fn empty_word_contract() {
        let empty = Monomial::empty();
        let x = Monomial::new([g(1, 1)]);
        assert!(r_oracle_words(2, &empty, &empty).unwrap().is_one());
        assert!(matches!(
            r_oracle_words(2, &empty, &x),
            Err(Error::EmptyWordPairing)
        ));
        assert!(matches!(
            r_oracle_words(2, &x, &empty),
            Err(Error::EmptyWordPairing)
        ));
        assert!(r_oracle(&AlgebraElement::one(2), &AlgebraElement::one(2))
            .unwrap()
            .is_one());
        assert!(r_oracle(&AlgebraElement::one(2), &gen_el(2, 1, 1)).is_err());
        assert!(r_oracle(&gen_el(2, 1, 1), &gen_el(3, 1, 1)).is_err());
    }

    /// The exchange axiom on generator pairs: with Δ(X_ij) = Σ_k X_ik ⊗ X_kj,
    /// Σ r(a₁, b₁) a₂ b₂ = Σ r(a₂, b₂) b₁ a₁ for all generator pairs a, b.
    /// This ties the base table to the straightening relations.
    #[test]
    fn exchange_axiom_on_generators() {
        let n = 3;
        for i in 1..=n {
            for j in 1..=n {
                for l in 1..=n {
                    for m in 1..=n {
                        let mut lhs = AlgebraElement::zero(n);
                        let mut rhs = AlgebraElement::zero(n);
                        for k in 1..=n {
                            for kp in 1..=n {
                                let left_scalar = r_base(g(i, k), g(l, kp));
                                if !left_scalar.is_zero() {
                                    let prod =
                                        &gen_el(n, k, j) * &gen_el(n, kp, m);
                                    lhs = &lhs + &prod.scale(&left_scalar);
                                }
                                let right_scalar = r_base(g(k, j), g(kp, m));
                                if !right_scalar.is_zero() {
                                    let prod =
                                        &gen_el(n, l, kp) * &gen_el(n, i, k);
                                    rhs = &rhs + &prod.scale(&right_scalar);
                                }
                            }
                        }
                        assert_eq!(lhs, rhs, "exchange axiom fails at ({i}{j}),({l}{m})");
                    }
                }
            }
        }
    }

    /// Product splitting in the first argument against a single letter:
    /// r(uv, X_lm) = Σ_k r(u, X_lk) r(v, X_km).
    #[test]
    fn first_argument_splitting_against_letters() {
        let n = 3;
        let words: Vec<Monomial> = {
            let mut out = Vec::new();
            for a in 1..=n {
                for b in 1..=n {
                    out.push(Monomial::new([g(a, b)]));
                    for c in 1..=n {
                        for d in 1..=n {
                            out.push(Monomial::new([g(a, b), g(c, d)]));
                        }
                    }
                }
            }
            out
        };
        for u in &words {
            for v in &words {
                if u.len() + v.len() > 3 {
                    continue;
                }
                let uv = Monomial::new(u.letters().iter().chain(v.letters()).copied());
                for l in 1..=n {
                    for m in 1..=n {
                        let direct =
                            r_oracle_words(n, &uv, &Monomial::new([g(l, m)])).unwrap();
                        let mut split = LaurentPoly::zero();
                        for k in 1..=n {
                            let left =
                                r_oracle_words(n, u, &Monomial::new([g(l, k)])).unwrap();
                            let right =
                                r_oracle_words(n, v, &Monomial::new([g(k, m)])).unwrap();
                            split = &split + &(&left * &right);
                        }
                        assert_eq!(direct, split, "splitting fails at {u} | {v} vs X[{l},{m}]");
                    }
                }
            }
        }
    }

    /// Second-argument splitting: r(u, vw) = Σ over the coproduct of u of
    /// r(u₁, w) r(u₂, v), with the middle sum enumerated in full
    /// (every k⃗ ∈ [1,n]^t), independently of the pruned walk inside the
    /// oracle.
    #[test]
    fn second_argument_splitting_brute_force() {
        let n = 2;
        let letters: Vec<Generator> = (1..=n)
            .flat_map(|a| (1..=n).map(move |b| g(a, b)))
            .collect();
        let mut words: Vec<Monomial> = Vec::new();
        for &a in &letters {
            words.push(Monomial::new([a]));
            for &b in &letters {
                words.push(Monomial::new([a, b]));
            }
        }
        for u in &words {
            for v in &words {
                for w in &words {
                    if v.len() + w.len() > 3 || u.len() > 2 {
                        continue;
                    }
                    let vw = Monomial::new(v.letters().iter().chain(w.letters()).copied());
                    let direct = r_oracle_words(n, u, &vw).unwrap();
                    let t = u.len();
                    let mut split = LaurentPoly::zero();
                    let mut kvec = vec![1usize; t];
                    loop {
                        let u1 = Monomial::new(
                            u.letters()
                                .iter()
                                .zip(&kvec)
                                .map(|(gu, &k)| Generator { row: gu.row, col: k }),
                        );
                        let u2 = Monomial::new(
                            u.letters()
                                .iter()
                                .zip(&kvec)
                                .map(|(gu, &k)| Generator { row: k, col: gu.col }),
                        );
                        let left = r_oracle_words(n, &u1, w).unwrap();
                        if !left.is_zero() {
                            let right = r_oracle_words(n, &u2, v).unwrap();
                            split = &split + &(&left * &right);
                        }
                        // advance k⃗ odometer
                        let mut pos = 0;
                        loop {
                            if pos == t {
                                break;
                            }
                            if kvec[pos] < n {
                                kvec[pos] += 1;
                                break;
                            }
                            kvec[pos] = 1;
                            pos += 1;
                        }
                        if pos == t {
                            break;
                        }
                    }
                    assert_eq!(direct, split, "second-arg splitting fails at {u}, {v}|{w}");
                }
            }
        }
    }

    #[test]
    fn oracle_minor_against_diagonal_letters() {
        // r([I|J], X_ii) = q^{δ(i,I)} δ(I,J), exhaustively for n = 3.
        let n = 3;
        for t in 1..=n {
            for rows in IndexSet::all_of_size(n, t) {
                for cols in IndexSet::all_of_size(n, t) {
                    let minor = minor_element(&rows, &cols).unwrap();
                    for i in 1..=n {
                        let value = r_oracle(&minor, &gen_el(n, i, i)).unwrap();
                        let expected = if rows == cols {
                            LaurentPoly::q_pow(if rows.contains(i) { 1 } else { 0 })
                        } else {
                            LaurentPoly::zero()
                        };
                        assert_eq!(value, expected, "[{rows}|{cols}] vs X[{i},{i}]");
                        let flipped = r_oracle(&gen_el(n, i, i), &minor).unwrap();
                        assert_eq!(flipped, expected, "X[{i},{i}] vs [{rows}|{cols}]");
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_degenerate_and_diagonal_cases() {
        let n = 4;
        // Empty first pair: Kronecker in (M, N).
        let empty = IndexSet::empty(n);
        for t in 1..=2usize {
            for m in IndexSet::all_of_size(n, t) {
                for nn in IndexSet::all_of_size(n, t) {
                    let value = r_minor_closed(&empty, &empty, &m, &nn).unwrap();
                    assert_eq!(value, if m == nn { LaurentPoly::one() } else { LaurentPoly::zero() });
                }
            }
        }
        // I = J: value q^{|I∩M|} δ(M,N), both argument orders.
        for t in 1..=2usize {
            for i in IndexSet::all_of_size(n, t) {
                for s in 1..=2usize {
                    for m in IndexSet::all_of_size(n, s) {
                        for nn in IndexSet::all_of_size(n, s) {
                            let expected = if m == nn {
                                LaurentPoly::q_pow(i.intersect(&m).len() as i64)
                            } else {
                                LaurentPoly::zero()
                            };
                            assert_eq!(
                                r_minor_closed(&i, &i, &m, &nn).unwrap(),
                                expected,
                                "I=J={i}, M={m}, N={nn}"
                            );
                            assert_eq!(
                                r_minor_closed(&m, &nn, &i, &i).unwrap(),
                                expected,
                                "M={m}, N={nn}, I=J={i}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_against_single_letter_formulas() {
        // Second argument a superdiagonal letter X_ij, i < j:
        // r([I|J], X_ij) = q̂ (−q)^{−|(i,j)∩I∩J|} δ(i,J) δ(j,I) δ(I∖j, J∖i).
        let n = 4;
        for t in 1..=3usize {
            for rows in IndexSet::all_of_size(n, t) {
                for cols in IndexSet::all_of_size(n, t) {
                    for i in 1..=n {
                        for j in (i + 1)..=n {
                            let m = set(n, &[i]);
                            let nn = set(n, &[j]);
                            let value = r_minor_closed(&rows, &cols, &m, &nn).unwrap();
                            let inner =
                                rows.intersect(&cols).interval_count(i, j) as i64;
                            let scalar =
                                &LaurentPoly::qhat() * &LaurentPoly::pow_neg_q(-inner);
                            let gated = cols.contains(i)
                                && rows.contains(j)
                                && rows.minus(&nn) == cols.minus(&set(n, &[i]));
                            let expected = if gated {
                                scalar.clone()
                            } else {
                                LaurentPoly::zero()
                            };
                            assert_eq!(value, expected, "[{rows}|{cols}] vs X[{i},{j}]");
                            // First argument the subdiagonal letter X_ji:
                            // r(X_ji, [I|J]) = q̂ (−q)^{−|(i,j)∩I∩J|}
                            //                  δ(j,J) δ(i,I) δ(I∖i, J∖j).
                            let swapped = r_minor_closed(&nn, &m, &rows, &cols).unwrap();
                            let gated_swap = cols.contains(j)
                                && rows.contains(i)
                                && rows.minus(&m) == cols.minus(&nn);
                            let expected_swap = if gated_swap {
                                scalar
                            } else {
                                LaurentPoly::zero()
                            };
                            assert_eq!(swapped, expected_swap, "X[{j},{i}] vs [{rows}|{cols}]");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_symmetries_small() {
        let n = 3;
        for t1 in 1..=2usize {
            for t2 in 1..=2usize {
                for i in IndexSet::all_of_size(n, t1) {
                    for j in IndexSet::all_of_size(n, t1) {
                        for m in IndexSet::all_of_size(n, t2) {
                            for nn in IndexSet::all_of_size(n, t2) {
                                let base = r_minor_closed(&i, &j, &m, &nn).unwrap();
                                let flip = r_minor_closed(&nn, &m, &j, &i).unwrap();
                                assert_eq!(base, flip, "transpose symmetry at {i} {j} {m} {nn}");
                                let reflected = r_minor_closed(
                                    &m.omega0(),
                                    &nn.omega0(),
                                    &i.omega0(),
                                    &j.omega0(),
                                )
                                .unwrap();
                                assert_eq!(base, reflected, "reflection symmetry at {i} {j} {m} {nn}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_oracle_n3() {
        let n = 3;
        for t1 in 1..=2usize {
            for t2 in 1..=2usize {
                for i in IndexSet::all_of_size(n, t1) {
                    for j in IndexSet::all_of_size(n, t1) {
                        let left = minor_element(&i, &j).unwrap();
                        for m in IndexSet::all_of_size(n, t2) {
                            for nn in IndexSet::all_of_size(n, t2) {
                                let right = minor_element(&m, &nn).unwrap();
                                let via_oracle = r_oracle(&left, &right).unwrap();
                                let closed = r_minor_closed(&i, &j, &m, &nn).unwrap();
                                assert_eq!(
                                    via_oracle, closed,
                                    "oracle vs closed at [{i}|{j}], [{m}|{nn}]"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn large_factored_example() {
        // n = 9: r([45678|12345], [123459|456789]).
        let n = 9;
        let i = set(n, &[4, 5, 6, 7, 8]);
        let j = set(n, &[1, 2, 3, 4, 5]);
        let m = set(n, &[1, 2, 3, 4, 5, 9]);
        let nn = set(n, &[4, 5, 6, 7, 8, 9]);
        let factored = r_minor_factored(&i, &j, &m, &nn).unwrap();
        assert!(!factored.is_zero());
        assert_eq!(factored.q_exp(), 2);
        assert_eq!(factored.qhat_exp(), 3);
        assert_eq!(factored.neg_q_exp(), -3);
        assert_eq!(factored.xi_factor_degrees(), &[3, 2, 1]);
        assert_eq!(
            factored.to_string(),
            "q^2 * qhat^3 * (-q)^-3 * (q^2 + 1 + q^-2) * (-q - q^-1)"
        );
        // Hand expansion: q⁵ − q³ − q + q⁻³ + q⁻⁵ − q⁻⁷.
        let mut expected = LaurentPoly::zero();
        for (e, c) in [(5, 1), (3, -1), (1, -1), (-3, 1), (-5, 1), (-7, -1)] {
            expected = &expected + &LaurentPoly::monomial(e, num_bigint::BigInt::from(c));
        }
        assert_eq!(factored.expand(), expected);
        assert_eq!(r_minor_closed(&i, &j, &m, &nn).unwrap(), expected);
    }

    #[test]
    fn vanishing_when_column_set_not_below_row_set() {
        // r([I|J], x) = 0 whenever J ≰ I… I ≱ J, and symmetrically.
        let n = 3;
        for t in 1..=2usize {
            for i in IndexSet::all_of_size(n, t) {
                for j in IndexSet::all_of_size(n, t) {
                    if j.leq_order(&i).unwrap() {
                        continue;
                    }
                    for s in 1..=2usize {
                        for m in IndexSet::all_of_size(n, s) {
                            for nn in IndexSet::all_of_size(n, s) {
                                assert!(r_minor_closed(&i, &j, &m, &nn).unwrap().is_zero());
                                assert!(r_minor_closed(&m, &nn, &j, &i).unwrap().is_zero());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn factored_trivial_product_renders_as_one() {
        let n = 2;
        let i = set(n, &[1]);
        // r([1|1], [2|2]) = q^0 = 1 (disjoint diagonal pair).
        let f = r_minor_factored(&i, &i, &set(n, &[2]), &set(n, &[2])).unwrap();
        assert_eq!(f.to_string(), "1");
        assert!(f.expand().is_one());
        let z = r_minor_factored(&i, &i, &set(n, &[1]), &set(n, &[2])).unwrap();
        assert_eq!(z.to_string(), "0");
        assert!(z.expand().is_zero());
    }

    #[test]
    fn cardinality_and_ambient_validation() {
        assert!(r_minor_closed(
            &set(3, &[1, 2]),
            &set(3, &[1]),
            &set(3, &[1]),
            &set(3, &[1])
        )
        .is_err());
        assert!(r_minor_closed(&set(3, &[1]), &set(3, &[1]), &set(4, &[1]), &set(4, &[1])).is_err());
    }

    #[test]
    fn oracle_handles_nontrivial_minor_pair() {
        // A size-2 pair in n = 3 with every layer in play.
        let i = set(3, &[2, 3]);
        let j = set(3, &[1, 2]);
        let m = set(3, &[1, 2]);
        let nn = set(3, &[2, 3]);
        let d1 = MinorDescriptor::new(i.clone(), j.clone()).unwrap();
        let d2 = MinorDescriptor::new(m.clone(), nn.clone()).unwrap();
        let via_oracle = r_oracle(&quantum_minor(&d1), &quantum_minor(&d2)).unwrap();
        let closed = r_minor_closed(&i, &j, &m, &nn).unwrap();
        assert_eq!(via_oracle, closed);
        assert!(!closed.is_zero());
    }
}
