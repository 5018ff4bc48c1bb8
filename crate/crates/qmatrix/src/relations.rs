//! The complete family of minor commutation relations as verifiable data.
//!
//! Each relation is generated as a formal identity — two lists of
//! coefficient × ordered-minor-product terms — and verified by expanding
//! both sides to normal form. Six kinds exchange a pair of minors:
//!
//! * `T5_2` / `C5_4` — the primary exchange identity and its transpose,
//!   with correction sums over `enum_less`/`enum_greater` families on one
//!   index pair each;
//! * `T5_6` / `C5_7` — the reflected variants with sign-twisted
//!   coefficients;
//! * `T6_3` / `C6_4` — the fully iterated forms whose corrections run over
//!   a product of ≤/≥ families and use two-sided minor replacements.
//!
//! Four more exchange a generator with a minor (`E3_2`, `E3_3`, `E3_10`,
//! `E3_12`), with Kronecker-δ gated single-swap sums. The module also
//! detects quasicommuting pairs ([`quasicommutation_exponent`]) and drives
//! bulk verification sweeps ([`sweep_verify`]).

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::indexset::{
    enum_greater, enum_less, l_exponent, lnat_exponent, natural_complement, separation_split,
    xi_degrees, IndexSet,
};
use crate::laurent::LaurentPoly;
use crate::minor::{quantum_minor, MinorDescriptor};

/// The ten relation kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(non_camel_case_types)]
pub enum RelationKind {
    /// Pair exchange, correction sums over rows-of-lhs / cols-of-rhs.
    T5_2,
    /// Pair exchange, correction sums over cols-of-lhs / rows-of-rhs.
    C5_4,
    /// Reflected pair exchange (≷ families swapped, signed coefficients).
    T5_6,
    /// Reflected transpose pair exchange.
    C5_7,
    /// Fully iterated exchange over a (≤, ≥) product family.
    T6_3,
    /// Fully iterated transpose exchange over a (≥, ≤) product family.
    C6_4,
    /// Generator–minor exchange, row-lowering form.
    E3_2,
    /// Generator–minor exchange, column-lowering form.
    E3_3,
    /// Generator–minor exchange, row-raising form.
    E3_10,
    /// Generator–minor exchange, column-raising form.
    E3_12,
}

impl RelationKind {
    /// All ten kinds, pair kinds first.
    pub fn all() -> [RelationKind; 10] {
        use RelationKind::*;
        [T5_2, C5_4, T5_6, C5_7, T6_3, C6_4, E3_2, E3_3, E3_10, E3_12]
    }

    /// The six minor-pair kinds.
    pub fn pair_kinds() -> [RelationKind; 6] {
        use RelationKind::*;
        [T5_2, C5_4, T5_6, C5_7, T6_3, C6_4]
    }

    /// The four generator–minor kinds.
    pub fn generator_kinds() -> [RelationKind; 4] {
        use RelationKind::*;
        [E3_2, E3_3, E3_10, E3_12]
    }

    /// Whether this kind takes four index sets (as opposed to a generator
    /// position plus one minor).
    pub fn is_pair_kind(self) -> bool {
        Self::pair_kinds().contains(&self)
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RelationKind::T5_2 => "T5.2",
            RelationKind::C5_4 => "C5.4",
            RelationKind::T5_6 => "T5.6",
            RelationKind::C5_7 => "C5.7",
            RelationKind::T6_3 => "T6.3",
            RelationKind::C6_4 => "C6.4",
            RelationKind::E3_2 => "E3.2",
            RelationKind::E3_3 => "E3.3",
            RelationKind::E3_10 => "E3.10",
            RelationKind::E3_12 => "E3.12",
        };
        f.write_str(name)
    }
}

impl FromStr for RelationKind {
    type Err = Error;

    /// Accepts the dotted display names (`T5.2`) and underscore variants
    /// (`T5_2`), case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('_', ".").as_str() {
            "T5.2" => Ok(RelationKind::T5_2),
            "C5.4" => Ok(RelationKind::C5_4),
            "T5.6" => Ok(RelationKind::T5_6),
            "C5.7" => Ok(RelationKind::C5_7),
            "T6.3" => Ok(RelationKind::T6_3),
            "C6.4" => Ok(RelationKind::C6_4),
            "E3.2" => Ok(RelationKind::E3_2),
            "E3.3" => Ok(RelationKind::E3_3),
            "E3.10" => Ok(RelationKind::E3_10),
            "E3.12" => Ok(RelationKind::E3_12),
            _ => Err(Error::UnknownKind(s.to_string())),
        }
    }
}

/// A relation coefficient kept in factored form: ±q^a · q̂^b · (−q)^c ·
/// Π_l [d_l]_{−q}. Never zero by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffFactorization {
    negative: bool,
    q_exp: i64,
    qhat_exp: i64,
    neg_q_exp: i64,
    xi_degrees: Vec<i64>,
}

impl CoeffFactorization {
    /// The coefficient 1.
    pub fn one() -> Self {
        Self::q_power(0)
    }

    /// A pure power of q.
    pub fn q_power(e: i64) -> Self {
        Self {
            negative: false,
            q_exp: e,
            qhat_exp: 0,
            neg_q_exp: 0,
            xi_degrees: Vec::new(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut xi = self.xi_degrees.clone();
        xi.extend_from_slice(&other.xi_degrees);
        Self {
            negative: self.negative != other.negative,
            q_exp: self.q_exp + other.q_exp,
            qhat_exp: self.qhat_exp + other.qhat_exp,
            neg_q_exp: self.neg_q_exp + other.neg_q_exp,
            xi_degrees: xi,
        }
    }

    fn mul_q_power(&self, e: i64) -> Self {
        let mut out = self.clone();
        out.q_exp += e;
        out
    }

    /// Whether the overall sign is negative.
    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// Multiply the factors out exactly.
    pub fn expand(&self) -> LaurentPoly {
        let mut value = LaurentPoly::q_pow(self.q_exp);
        for _ in 0..self.qhat_exp {
            value = &value * &LaurentPoly::qhat();
        }
        value = &value * &LaurentPoly::pow_neg_q(self.neg_q_exp);
        for &d in &self.xi_degrees {
            value = &value * &LaurentPoly::neg_q_integer(d).expect("positive factor degree");
        }
        if self.negative {
            value = -&value;
        }
        value
    }

    /// The unsigned factored text (`q^3`, `qhat^2 (-q)^-1 (-q-q^-1)`, …);
    /// `None` when the magnitude is 1 (the coefficient is then omitted from
    /// relation text).
    pub fn magnitude_text(&self) -> Option<String> {
        let mut parts: Vec<String> = Vec::new();
        for (base, exp) in [
            ("q", self.q_exp),
            ("qhat", self.qhat_exp),
            ("(-q)", self.neg_q_exp),
        ] {
            match exp {
                0 => {}
                1 => parts.push(base.to_string()),
                _ => parts.push(format!("{base}^{exp}")),
            }
        }
        for &d in &self.xi_degrees {
            if d >= 2 {
                let factor = LaurentPoly::neg_q_integer(d).expect("positive factor degree");
                parts.push(format!("({})", factor.to_compact_string()));
            }
        }
        if parts.is_empty() {
            None
        } else {
            Some(parts.join(" "))
        }
    }
}

/// λ_S for the pair (X, Y): q̂^{|X∖S|} (−q)^{ℒ(S,X,Y)} ξ_q(X∖S; S∖X),
/// defined for S in `enum_less(X, Y)`.
fn lambda_plain(s: &IndexSet, x: &IndexSet, y: &IndexSet) -> Result<CoeffFactorization> {
    Ok(CoeffFactorization {
        negative: false,
        q_exp: 0,
        qhat_exp: x.minus(s).len() as i64,
        neg_q_exp: l_exponent(s, x, y)?,
        xi_degrees: xi_degrees(&x.minus(s), &s.minus(x))?,
    })
}

/// μ_T for the pair (X, Y): q̂^{|T∖X|} (−q)^{ℒ♮(T,X,Y)} ξ_q(T∖X; X∖T),
/// defined for T in `enum_greater(X, Y)` ∪ {X}.
fn mu_plain(t: &IndexSet, x: &IndexSet, y: &IndexSet) -> Result<CoeffFactorization> {
    Ok(CoeffFactorization {
        negative: false,
        q_exp: 0,
        qhat_exp: t.minus(x).len() as i64,
        neg_q_exp: lnat_exponent(t, x, y)?,
        xi_degrees: xi_degrees(&t.minus(x), &x.minus(t))?,
    })
}

/// μ̃_S for the pair (X, Y): (−q̂)^{|S∖X|} (−q)^{−ℒ♮(S,X,Y)} ξ_q(S∖X; X∖S),
/// defined for S in `enum_greater(X, Y)`.
fn mu_tilde(s: &IndexSet, x: &IndexSet, y: &IndexSet) -> Result<CoeffFactorization> {
    let k = s.minus(x).len();
    Ok(CoeffFactorization {
        negative: k % 2 == 1,
        q_exp: 0,
        qhat_exp: k as i64,
        neg_q_exp: -lnat_exponent(s, x, y)?,
        xi_degrees: xi_degrees(&s.minus(x), &x.minus(s))?,
    })
}

/// λ̃_T for the pair (X, Y): (−q̂)^{|X∖T|} (−q)^{−ℒ(T,X,Y)} ξ_q(X∖T; T∖X),
/// defined for T in `enum_less(X, Y)` ∪ {X}.
fn lambda_tilde(t: &IndexSet, x: &IndexSet, y: &IndexSet) -> Result<CoeffFactorization> {
    let k = x.minus(t).len();
    Ok(CoeffFactorization {
        negative: k % 2 == 1,
        q_exp: 0,
        qhat_exp: k as i64,
        neg_q_exp: -l_exponent(t, x, y)?,
        xi_degrees: xi_degrees(&x.minus(t), &t.minus(x))?,
    })
}

/// One summand of a relation: a nonzero factored coefficient times an
/// ordered product of minors (order is semantically significant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorProductTerm {
    pub coeff: CoeffFactorization,
    pub factors: Vec<MinorDescriptor>,
}

impl MinorProductTerm {
    fn new(coeff: CoeffFactorization, factors: Vec<MinorDescriptor>) -> Self {
        Self { coeff, factors }
    }

    /// Expand the term to a normal-form element.
    pub fn expand(&self, n: usize) -> AlgebraElement {
        let mut product = AlgebraElement::constant(n, self.coeff.expand());
        for d in &self.factors {
            product = &product * &quantum_minor(d);
        }
        product
    }
}

/// The inputs a relation was generated from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationInputs {
    /// Four index sets (I, J, M, N) for the pair kinds.
    MinorPair {
        i: IndexSet,
        j: IndexSet,
        m: IndexSet,
        n: IndexSet,
    },
    /// A generator position (i, j) plus a minor [I|J].
    GeneratorMinor {
        i: usize,
        j: usize,
        rows: IndexSet,
        cols: IndexSet,
    },
}

impl RelationInputs {
    /// Ambient size n.
    pub fn ambient(&self) -> usize {
        match self {
            RelationInputs::MinorPair { i, .. } => i.ambient(),
            RelationInputs::GeneratorMinor { rows, .. } => rows.ambient(),
        }
    }
}

impl fmt::Display for RelationInputs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationInputs::MinorPair { i, j, m, n } => {
                write!(f, "I={i} J={j} M={m} N={n}")
            }
            RelationInputs::GeneratorMinor { i, j, rows, cols } => {
                write!(f, "i={i} j={j} I={rows} J={cols}")
            }
        }
    }
}

/// A formal commutation identity: expand(lhs) must equal expand(rhs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationIdentity {
    pub kind: RelationKind,
    pub inputs: RelationInputs,
    pub lhs: Vec<MinorProductTerm>,
    pub rhs: Vec<MinorProductTerm>,
}

impl RelationIdentity {
    /// Ambient size n.
    pub fn ambient(&self) -> usize {
        self.inputs.ambient()
    }

    /// Expand one side to normal form.
    fn expand_side(&self, terms: &[MinorProductTerm]) -> AlgebraElement {
        let n = self.ambient();
        let mut total = AlgebraElement::zero(n);
        for term in terms {
            total = &total + &term.expand(n);
        }
        total
    }

    /// Sum over all terms of the product of factor-size factorials: an a
    /// priori proxy for the number of words the verification will touch.
    pub fn predicted_words(&self) -> u64 {
        fn factorial(k: usize) -> u64 {
            (1..=k as u64).product::<u64>().max(1)
        }
        self.lhs
            .iter()
            .chain(&self.rhs)
            .map(|t| t.factors.iter().map(|d| factorial(d.size())).product::<u64>())
            .sum()
    }

    /// Render the identity as text, terms joined by sign:
    /// `q^3 [236|123][145|123] = [145|123][236|123] + qhat^2 (-q)^-1 (-q-q^-1) [123|123][456|123] + …`.
    pub fn to_text(&self) -> String {
        fn side_text(terms: &[MinorProductTerm]) -> String {
            let mut out = String::new();
            for (idx, term) in terms.iter().enumerate() {
                if idx == 0 {
                    if term.coeff.is_negative() {
                        out.push('-');
                    }
                } else if term.coeff.is_negative() {
                    out.push_str(" - ");
                } else {
                    out.push_str(" + ");
                }
                if let Some(text) = term.coeff.magnitude_text() {
                    out.push_str(&text);
                    out.push(' ');
                }
                for d in &term.factors {
                    out.push_str(&d.to_string());
                }
            }
            out
        }
        format!("{} = {}", side_text(&self.lhs), side_text(&self.rhs))
    }

    /// Render the identity as JSON, with coefficients expanded to the
    /// sparse exponent→integer map.
    pub fn to_json(&self) -> serde_json::Value {
        fn side_json(terms: &[MinorProductTerm]) -> serde_json::Value {
            serde_json::Value::Array(
                terms
                    .iter()
                    .map(|t| {
                        json!({
                            "coeff": t.coeff.expand().to_json(),
                            "factors": t.factors.iter().map(|d| json!({
                                "rows": d.rows().elems(),
                                "cols": d.cols().elems(),
                            })).collect::<Vec<_>>(),
                        })
                    })
                    .collect(),
            )
        }
        let inputs = match &self.inputs {
            RelationInputs::MinorPair { i, j, m, n } => json!({
                "n": i.ambient(),
                "I": i.elems(),
                "J": j.elems(),
                "M": m.elems(),
                "N": n.elems(),
            }),
            RelationInputs::GeneratorMinor { i, j, rows, cols } => json!({
                "n": rows.ambient(),
                "i": i,
                "j": j,
                "I": rows.elems(),
                "J": cols.elems(),
            }),
        };
        json!({
            "kind": self.kind.to_string(),
            "inputs": inputs,
            "lhs": side_json(&self.lhs),
            "rhs": side_json(&self.rhs),
        })
    }
}

fn descriptor(rows: &IndexSet, cols: &IndexSet) -> Result<MinorDescriptor> {
    MinorDescriptor::new(rows.clone(), cols.clone())
}

fn check_pair_inputs(
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
    if i_set.is_empty() || m_set.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    Ok(())
}

/// Generates one of the six minor-pair commutation identities.
///
/// Terms are emitted deterministically: the distinguished product first,
/// then correction terms in lexicographic order of their enumeration
/// sets (for the iterated kinds, lexicographic in the pair (S, T)).
pub fn gen_pair_relation(
    kind: RelationKind,
    i_set: &IndexSet,
    j_set: &IndexSet,
    m_set: &IndexSet,
    n_set: &IndexSet,
) -> Result<RelationIdentity> {
    if !kind.is_pair_kind() {
        return Err(Error::Precondition(format!(
            "{kind} takes a generator position, not four index sets"
        )));
    }
    check_pair_inputs(i_set, j_set, m_set, n_set)?;
    let q_im = i_set.intersect(m_set).len() as i64;
    let q_jn = j_set.intersect(n_set).len() as i64;
    let (i, j, m, n) = (i_set, j_set, m_set, n_set);

    let mut lhs: Vec<MinorProductTerm> = Vec::new();
    let mut rhs: Vec<MinorProductTerm> = Vec::new();
    let fwd = vec![descriptor(i, j)?, descriptor(m, n)?];
    let rev = vec![descriptor(m, n)?, descriptor(i, j)?];

    match kind {
        RelationKind::T5_2 => {
            lhs.push(MinorProductTerm::new(CoeffFactorization::q_power(q_im), fwd));
            for s in enum_less(i, m) {
                let coeff = lambda_plain(&s, i, m)?.mul_q_power(q_im);
                let s_nat = natural_complement(&s, i, m)?;
                lhs.push(MinorProductTerm::new(
                    coeff,
                    vec![descriptor(&s, j)?, descriptor(&s_nat, n)?],
                ));
            }
            rhs.push(MinorProductTerm::new(CoeffFactorization::q_power(q_jn), rev));
            for t in enum_greater(j, n) {
                let coeff = mu_plain(&t, j, n)?.mul_q_power(q_jn);
                let t_nat = natural_complement(&t, j, n)?;
                rhs.push(MinorProductTerm::new(
                    coeff,
                    vec![descriptor(m, &t_nat)?, descriptor(i, &t)?],
                ));
            }
        }
        RelationKind::C5_4 => {
            lhs.push(MinorProductTerm::new(CoeffFactorization::q_power(q_jn), fwd));
            for s in enum_less(j, n) {
                let coeff = lambda_plain(&s, j, n)?.mul_q_power(q_jn);
                let s_nat = natural_complement(&s, j, n)?;
                lhs.push(MinorProductTerm::new(
                    coeff,
                    vec![descriptor(i, &s)?, descriptor(m, &s_nat)?],
                ));
            }
            rhs.push(MinorProductTerm::new(CoeffFactorization::q_power(q_im), rev));
            for t in enum_greater(i, m) {
                let coeff = mu_plain(&t, i, m)?.mul_q_power(q_im);
                let t_nat = natural_complement(&t, i, m)?;
                rhs.push(MinorProductTerm::new(
                    coeff,
                    vec![descriptor(&t_nat, n)?, descriptor(&t, j)?],
                ));
            }
        }
        RelationKind::T5_6 => {
            lhs.push(MinorProductTerm::new(CoeffFactorization::q_power(q_jn), fwd));
            for s in enum_greater(i, m) {
                let coeff = mu_tilde(&s, i, m)?.mul_q_power(q_jn);
                let s_nat = natural_complement(&s, i, m)?;
                lhs.push(MinorProductTerm::new(
                    coeff,
                    vec![descriptor(&s, j)?, descriptor(&s_nat, n)?],
                ));
            }
            rhs.push(MinorProductTerm::new(CoeffFactorization::q_power(q_im), rev));
            for t in enum_less(j, n) {
                let coeff = lambda_tilde(&t, j, n)?.mul_q_power(q_im);
                let t_nat = natural_complement(&t, j, n)?;
                rhs.push(MinorProductTerm::new(
                    coeff,
                    vec![descriptor(m, &t_nat)?, descriptor(i, &t)?],
                ));
            }
        }
        RelationKind::C5_7 => {
            lhs.push(MinorProductTerm::new(CoeffFactorization::q_power(q_im), fwd));
            for s in enum_greater(j, n) {
                let coeff = mu_tilde(&s, j, n)?.mul_q_power(q_im);
                let s_nat = natural_complement(&s, j, n)?;
                lhs.push(MinorProductTerm::new(
                    coeff,
                    vec![descriptor(i, &s)?, descriptor(m, &s_nat)?],
                ));
            }
            rhs.push(MinorProductTerm::new(CoeffFactorization::q_power(q_jn), rev));
            for t in enum_less(i, m) {
                let coeff = lambda_tilde(&t, i, m)?.mul_q_power(q_jn);
                let t_nat = natural_complement(&t, i, m)?;
                rhs.push(MinorProductTerm::new(
                    coeff,
                    vec![descriptor(&t_nat, n)?, descriptor(&t, j)?],
                ));
            }
        }
        RelationKind::T6_3 => {
            lhs.push(MinorProductTerm::new(CoeffFactorization::q_power(q_im), fwd));
            rhs.push(MinorProductTerm::new(CoeffFactorization::q_power(q_jn), rev));
            // S runs over enum_less(I, M) ∪ {I} and T over {J} ∪
            // enum_greater(J, N); I is lexicographically last among the S
            // and J first among the T, so appending/prepending keeps the
            // (S, T) iteration lexicographic.
            let mut s_family = enum_less(i, m);
            s_family.push(i.clone());
            let mut t_family = vec![j.clone()];
            t_family.extend(enum_greater(j, n));
            for s in &s_family {
                let lam = lambda_tilde(s, i, m)?;
                let s_nat = natural_complement(s, i, m)?;
                for t in &t_family {
                    if s == i && t == j {
                        continue;
                    }
                    let coeff = lam.mul(&mu_plain(t, j, n)?).mul_q_power(q_jn);
                    let t_nat = natural_complement(t, j, n)?;
                    rhs.push(MinorProductTerm::new(
                        coeff,
                        vec![descriptor(&s_nat, &t_nat)?, descriptor(s, t)?],
                    ));
                }
            }
        }
        RelationKind::C6_4 => {
            lhs.push(MinorProductTerm::new(CoeffFactorization::q_power(q_jn), fwd));
            rhs.push(MinorProductTerm::new(CoeffFactorization::q_power(q_im), rev));
            // S over {I} ∪ enum_greater(I, M) (I lex-first), T over
            // enum_less(J, N) ∪ {J} (J lex-last).
            let mut s_family = vec![i.clone()];
            s_family.extend(enum_greater(i, m));
            let mut t_family = enum_less(j, n);
            t_family.push(j.clone());
            for s in &s_family {
                let mu = mu_plain(s, i, m)?;
                let s_nat = natural_complement(s, i, m)?;
                for t in &t_family {
                    if s == i && t == j {
                        continue;
                    }
                    let coeff = mu.mul(&lambda_tilde(t, j, n)?).mul_q_power(q_im);
                    let t_nat = natural_complement(t, j, n)?;
                    rhs.push(MinorProductTerm::new(
                        coeff,
                        vec![descriptor(&s_nat, &t_nat)?, descriptor(s, t)?],
                    ));
                }
            }
        }
        _ => unreachable!("pair kinds are exhaustive"),
    }

    Ok(RelationIdentity {
        kind,
        inputs: RelationInputs::MinorPair {
            i: i_set.clone(),
            j: j_set.clone(),
            m: m_set.clone(),
            n: n_set.clone(),
        },
        lhs,
        rhs,
    })
}

/// A generator as a 1×1 minor descriptor.
fn point(n: usize, row: usize, col: usize) -> Result<MinorDescriptor> {
    MinorDescriptor::new(IndexSet::new(n, [row])?, IndexSet::new(n, [col])?)
}

/// Generates one of the four generator–minor commutation identities.
///
/// The δ-function gating is kept structural: a gated sum whose prefactor
/// vanishes emits no terms, and the surviving swap sums run over l in
/// ascending order.
pub fn gen_generator_minor_relation(
    kind: RelationKind,
    gi: usize,
    gj: usize,
    rows: &IndexSet,
    cols: &IndexSet,
) -> Result<RelationIdentity> {
    if kind.is_pair_kind() {
        return Err(Error::Precondition(format!(
            "{kind} takes four index sets, not a generator position"
        )));
    }
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
    if rows.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    crate::algebra::Generator::new(n, gi, gj)?;

    let x_ij = point(n, gi, gj)?;
    let minor = descriptor(rows, cols)?;
    let di = rows.contains(gi); // δ(i, I)
    let dj = cols.contains(gj); // δ(j, J)
    let d = |flag: bool| if flag { 1 } else { 0 };

    // One gated swap sum: for each l in `set` on the given side of `pivot`,
    // a term ±q̂ (−q)^{±|(lo,hi)∩set|} with the pivot swapped in for l.
    // `generator_first` puts the swapped generator before the minor.
    struct SwapSum {
        below: bool,          // l < pivot (else l > pivot)
        negative: bool,       // overall (δ−1) sign
        inverted: bool,       // (−q) exponent sign: true for −|interval|
        swap_rows: bool,      // swap within the row set (else column set)
        generator_first: bool // factor order: generator then minor
    }

    let build_sum = |cfg: SwapSum| -> Result<Vec<MinorProductTerm>> {
        let (set, pivot) = if cfg.swap_rows { (rows, gi) } else { (cols, gj) };
        let mut terms = Vec::new();
        for &l in set.elems() {
            if (cfg.below && l >= pivot) || (!cfg.below && l <= pivot) {
                continue;
            }
            let (lo, hi) = (l.min(pivot), l.max(pivot));
            let count = set.interval_count(lo, hi) as i64;
            let coeff = CoeffFactorization {
                negative: cfg.negative,
                q_exp: 0,
                qhat_exp: 1,
                neg_q_exp: if cfg.inverted { -count } else { count },
                xi_degrees: Vec::new(),
            };
            let swapped = if cfg.swap_rows {
                descriptor(&rows.swap(l, pivot)?, cols)?
            } else {
                descriptor(rows, &cols.swap(l, pivot)?)?
            };
            let generator = if cfg.swap_rows {
                point(n, l, gj)?
            } else {
                point(n, gi, l)?
            };
            let factors = if cfg.generator_first {
                vec![generator, swapped]
            } else {
                vec![swapped, generator]
            };
            terms.push(MinorProductTerm::new(coeff, factors));
        }
        Ok(terms)
    };

    let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
    match kind {
        RelationKind::E3_2 => {
            lhs.push(MinorProductTerm::new(
                CoeffFactorization::q_power(d(di)),
                vec![x_ij.clone(), minor.clone()],
            ));
            if !di {
                lhs.extend(build_sum(SwapSum {
                    below: true,
                    negative: false,
                    inverted: true,
                    swap_rows: true,
                    generator_first: true,
                })?);
            }
            rhs.push(MinorProductTerm::new(
                CoeffFactorization::q_power(d(dj)),
                vec![minor, x_ij],
            ));
            if !dj {
                rhs.extend(build_sum(SwapSum {
                    below: false,
                    negative: false,
                    inverted: true,
                    swap_rows: false,
                    generator_first: false,
                })?);
            }
        }
        RelationKind::E3_3 => {
            lhs.push(MinorProductTerm::new(
                CoeffFactorization::q_power(d(dj)),
                vec![x_ij.clone(), minor.clone()],
            ));
            if !dj {
                lhs.extend(build_sum(SwapSum {
                    below: true,
                    negative: false,
                    inverted: true,
                    swap_rows: false,
                    generator_first: true,
                })?);
            }
            rhs.push(MinorProductTerm::new(
                CoeffFactorization::q_power(d(di)),
                vec![minor, x_ij],
            ));
            if !di {
                rhs.extend(build_sum(SwapSum {
                    below: false,
                    negative: false,
                    inverted: true,
                    swap_rows: true,
                    generator_first: false,
                })?);
            }
        }
        RelationKind::E3_10 => {
            lhs.push(MinorProductTerm::new(
                CoeffFactorization::q_power(-d(di)),
                vec![x_ij.clone(), minor.clone()],
            ));
            if !di {
                lhs.extend(build_sum(SwapSum {
                    below: false,
                    negative: true,
                    inverted: false,
                    swap_rows: true,
                    generator_first: true,
                })?);
            }
            rhs.push(MinorProductTerm::new(
                CoeffFactorization::q_power(-d(dj)),
                vec![minor, x_ij],
            ));
            if !dj {
                rhs.extend(build_sum(SwapSum {
                    below: true,
                    negative: true,
                    inverted: false,
                    swap_rows: false,
                    generator_first: false,
                })?);
            }
        }
        RelationKind::E3_12 => {
            lhs.push(MinorProductTerm::new(
                CoeffFactorization::q_power(-d(dj)),
                vec![x_ij.clone(), minor.clone()],
            ));
            if !dj {
                lhs.extend(build_sum(SwapSum {
                    below: false,
                    negative: true,
                    inverted: false,
                    swap_rows: false,
                    generator_first: true,
                })?);
            }
            rhs.push(MinorProductTerm::new(
                CoeffFactorization::q_power(-d(di)),
                vec![minor, x_ij],
            ));
            if !di {
                rhs.extend(build_sum(SwapSum {
                    below: true,
                    negative: true,
                    inverted: false,
                    swap_rows: true,
                    generator_first: false,
                })?);
            }
        }
        _ => unreachable!("generator kinds are exhaustive"),
    }

    Ok(RelationIdentity {
        kind,
        inputs: RelationInputs::GeneratorMinor {
            i: gi,
            j: gj,
            rows: rows.clone(),
            cols: cols.clone(),
        },
        lhs,
        rhs,
    })
}

/// Verifies a relation by expanding both sides to normal form and
/// comparing. `false` is a finding, never an error.
pub fn verify_relation(rel: &RelationIdentity) -> bool {
    rel.expand_side(&rel.lhs) == rel.expand_side(&rel.rhs)
}

/// Detects quasicommutation [I|J][M|N] = q^m [M|N][I|J] from the
/// implemented sufficient conditions, in order:
///
/// (a) max(M∖I) < min(I∖M) and max(J∖N) < min(N∖J) ⇒ m = |I∩M| − |J∩N|;
/// (b) max(I∖M) < min(M∖I) and max(N∖J) < min(J∖N) ⇒ m = |J∩N| − |I∩M|;
/// (c) I ⊆ M with J, N weakly separated (J∖N = J'⊔J'' around N∖J)
///     ⇒ m = |J'| − |J''|;
/// (d) J ⊆ N with I = I'⊔I'' around the whole of M
///     (max(I') < min(M) ≤ max(M) < min(I'')) ⇒ m = |I'| − |I''|.
///
/// `None` means no conclusion — not a claim of non-quasicommutation.
pub fn quasicommutation_exponent(
    i_set: &IndexSet,
    j_set: &IndexSet,
    m_set: &IndexSet,
    n_set: &IndexSet,
) -> Result<Option<i64>> {
    check_pair_inputs(i_set, j_set, m_set, n_set)?;
    fn sep_lt(a: &IndexSet, b: &IndexSet) -> bool {
        match (a.max_elem(), b.min_elem()) {
            (Some(hi), Some(lo)) => hi < lo,
            _ => true,
        }
    }
    let q_im = i_set.intersect(m_set).len() as i64;
    let q_jn = j_set.intersect(n_set).len() as i64;
    if sep_lt(&m_set.minus(i_set), &i_set.minus(m_set))
        && sep_lt(&j_set.minus(n_set), &n_set.minus(j_set))
    {
        return Ok(Some(q_im - q_jn));
    }
    if sep_lt(&i_set.minus(m_set), &m_set.minus(i_set))
        && sep_lt(&n_set.minus(j_set), &j_set.minus(n_set))
    {
        return Ok(Some(q_jn - q_im));
    }
    if i_set.is_subset_of(m_set) {
        if let Some((j_lo, j_hi)) = separation_split(j_set, n_set) {
            return Ok(Some(j_lo as i64 - j_hi as i64));
        }
    }
    if j_set.is_subset_of(n_set) {
        let lo = m_set.min_elem().expect("nonempty by validation");
        let hi = m_set.max_elem().expect("nonempty by validation");
        let below = i_set.elems().iter().filter(|&&x| x < lo).count();
        let above = i_set.elems().iter().filter(|&&x| x > hi).count();
        if below + above == i_set.len() {
            return Ok(Some(below as i64 - above as i64));
        }
    }
    Ok(None)
}

/// Configuration for a verification sweep.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Ambient size (≤ 4 exhaustive, 5–6 sampled, larger rejected).
    pub n: usize,
    /// Largest index-set cardinality to enumerate.
    pub max_size: usize,
    /// Relation kinds to generate.
    pub kinds: Vec<RelationKind>,
    /// Sampling seed for the randomized regime.
    pub seed: u64,
    /// Quadruples per kind in the randomized regime.
    pub samples: usize,
    /// Abort threshold on the summed predicted word count.
    pub term_ceiling: u64,
}

impl SweepConfig {
    /// A config with the default seed (1), sample count (200), and
    /// predicted-word ceiling (2,000,000).
    pub fn new(n: usize, max_size: usize, kinds: Vec<RelationKind>) -> Self {
        Self {
            n,
            max_size,
            kinds,
            seed: 1,
            samples: 200,
            term_ceiling: 2_000_000,
        }
    }
}

/// Outcome of a verification sweep.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub n: usize,
    pub max_size: usize,
    pub kinds: Vec<RelationKind>,
    /// Whether every admissible input was enumerated (vs sampled).
    pub exhaustive: bool,
    pub total: u64,
    pub passed: u64,
    pub failed: u64,
    /// Kind and inputs of the first failing identity, if any.
    pub first_failure: Option<String>,
    /// The a priori cost estimate that was checked against the ceiling.
    pub predicted_words: u64,
}

impl SweepReport {
    /// Whether every identity verified.
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kinds = self
            .kinds
            .iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let mode = if self.exhaustive {
            "exhaustive"
        } else {
            "sampled"
        };
        if self.failed == 0 {
            write!(
                f,
                "PASS: {}/{} identities verified (n={}, max_size={}, kinds=[{}], {})",
                self.passed, self.total, self.n, self.max_size, kinds, mode
            )
        } else {
            write!(
                f,
                "FAIL: {}/{} identities failed (n={}, max_size={}, kinds=[{}], {}); first counterexample: {}",
                self.failed,
                self.total,
                self.n,
                self.max_size,
                kinds,
                mode,
                self.first_failure.as_deref().unwrap_or("unknown")
            )
        }
    }
}

/// Largest ambient size the sweep accepts.
pub const SWEEP_AMBIENT_BOUND: usize = 6;
/// Largest ambient size swept exhaustively.
pub const SWEEP_EXHAUSTIVE_BOUND: usize = 4;

fn random_subset(rng: &mut ChaCha8Rng, n: usize, size: usize) -> IndexSet {
    let picks = rand::seq::index::sample(rng, n, size)
        .into_iter()
        .map(|x| x + 1);
    IndexSet::new(n, picks).expect("sampled indices are distinct and in range")
}

/// Generates every identity the sweep will verify.
fn sweep_identities(config: &SweepConfig) -> Result<Vec<RelationIdentity>> {
    let n = config.n;
    let cap = config.max_size.min(n);
    let mut identities = Vec::new();
    if n <= SWEEP_EXHAUSTIVE_BOUND {
        let families: Vec<Vec<IndexSet>> =
            (1..=cap).map(|t| IndexSet::all_of_size(n, t)).collect();
        for kind in &config.kinds {
            if kind.is_pair_kind() {
                for f1 in &families {
                    for i in f1 {
                        for j in f1 {
                            for f2 in &families {
                                for m in f2 {
                                    for nn in f2 {
                                        identities
                                            .push(gen_pair_relation(*kind, i, j, m, nn)?);
                                    }
                                }
                            }
                        }
                    }
                }
            } else {
                for gi in 1..=n {
                    for gj in 1..=n {
                        for fam in &families {
                            for rows in fam {
                                for cols in fam {
                                    identities.push(gen_generator_minor_relation(
                                        *kind, gi, gj, rows, cols,
                                    )?);
                                }
                            }
                        }
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        for kind in &config.kinds {
            for _ in 0..config.samples {
                if kind.is_pair_kind() {
                    let t1 = rng.random_range(1..=cap);
                    let t2 = rng.random_range(1..=cap);
                    let i = random_subset(&mut rng, n, t1);
                    let j = random_subset(&mut rng, n, t1);
                    let m = random_subset(&mut rng, n, t2);
                    let nn = random_subset(&mut rng, n, t2);
                    identities.push(gen_pair_relation(*kind, &i, &j, &m, &nn)?);
                } else {
                    let gi = rng.random_range(1..=n);
                    let gj = rng.random_range(1..=n);
                    let t = rng.random_range(1..=cap);
                    let rows = random_subset(&mut rng, n, t);
                    let cols = random_subset(&mut rng, n, t);
                    identities
                        .push(gen_generator_minor_relation(*kind, gi, gj, &rows, &cols)?);
                }
            }
        }
    }
    Ok(identities)
}

/// Generates and verifies relations in bulk.
///
/// Ambient sizes through [`SWEEP_EXHAUSTIVE_BOUND`] are enumerated
/// exhaustively up to `max_size`; sizes 5 and 6 sample `samples` random
/// quadruples per kind from the seeded generator; larger sizes are
/// rejected. Before any expansion the summed predicted word count is
/// checked against the ceiling. Verification runs on the rayon pool.
pub fn sweep_verify(config: &SweepConfig) -> Result<SweepReport> {
    if config.n > SWEEP_AMBIENT_BOUND {
        return Err(Error::SweepBound {
            n: config.n,
            bound: SWEEP_AMBIENT_BOUND,
        });
    }
    if config.n == 0 || config.max_size == 0 {
        return Err(Error::Precondition(
            "sweep needs positive ambient size and max_size".into(),
        ));
    }
    let identities = sweep_identities(config)?;
    let predicted: u64 = identities
        .iter()
        .map(RelationIdentity::predicted_words)
        .fold(0u64, u64::saturating_add);
    if predicted > config.term_ceiling {
        return Err(Error::TermCeiling {
            predicted,
            ceiling: config.term_ceiling,
        });
    }
    let failures: Vec<(usize, String)> = identities
        .par_iter()
        .enumerate()
        .filter_map(|(idx, rel)| {
            if verify_relation(rel) {
                None
            } else {
                Some((idx, format!("kind={} {}", rel.kind, rel.inputs)))
            }
        })
        .collect();
    let total = identities.len() as u64;
    let failed = failures.len() as u64;
    let first_failure = failures
        .into_iter()
        .min_by_key(|(idx, _)| *idx)
        .map(|(_, desc)| desc);
    Ok(SweepReport {
        n: config.n,
        max_size: config.max_size,
        kinds: config.kinds.clone(),
        exhaustive: config.n <= SWEEP_EXHAUSTIVE_BOUND,
        total,
        passed: total - failed,
        failed,
        first_failure,
        predicted_words: predicted,
    })
}
