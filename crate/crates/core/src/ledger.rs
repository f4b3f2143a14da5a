//! Formal products of shifted L- and γ-factors, and words in named sign constants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{HalfInt, Sign};
use crate::error::{Error, Result};
use crate::param::{AParameter, Case, IrrSymbol, Side, Summand, TwistGen, TwistRole, TwistWord};
use crate::theta::{h_dim, TwistPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AtomKind {
    L,
    #[serde(rename = "gamma")]
    Gamma,
    /// `|κ|^{c·s}`; equal to 1 at `s = 0`.
    #[serde(rename = "abs")]
    Abs,
}

/// `kind(s_coeff·s + shift, operand)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Atom {
    pub kind: AtomKind,
    pub operand: String,
    #[serde(default)]
    pub dual: bool,
    #[serde(rename = "s")]
    pub s_coeff: i32,
    #[serde(rename = "shift_x2")]
    pub shift: HalfInt,
}

impl Atom {
    pub fn l(operand: impl Into<String>, dual: bool, s_coeff: i32, shift: HalfInt) -> Atom {
        Atom { kind: AtomKind::L, operand: operand.into(), dual, s_coeff, shift }
    }

    pub fn gamma(operand: impl Into<String>, dual: bool, s_coeff: i32, shift: HalfInt) -> Atom {
        Atom { kind: AtomKind::Gamma, operand: operand.into(), dual, s_coeff, shift }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arg = match (self.s_coeff, self.shift.doubled()) {
            (0, _) => self.shift.to_string(),
            (c, 0) => format!("{}s", coeff(c)),
            (c, x) if x > 0 => format!("{}s+{}", coeff(c), self.shift),
            (c, _) => format!("{}s-{}", coeff(c), -self.shift),
        };
        let op = if self.dual { format!("{}~", self.operand) } else { self.operand.clone() };
        match self.kind {
            AtomKind::L => write!(f, "L({arg},{op})"),
            AtomKind::Gamma => write!(f, "gamma({arg},{op})"),
            AtomKind::Abs => write!(f, "{op}^({arg})"),
        }
    }
}

fn coeff(c: i32) -> String {
    match c {
        1 => String::new(),
        -1 => "-".into(),
        _ => c.to_string(),
    }
}

/// A formal product of atoms with integer exponents; the empty product is 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorLedger {
    atoms: BTreeMap<Atom, i64>,
}

impl FactorLedger {
    pub fn one() -> FactorLedger {
        FactorLedger::default()
    }

    pub fn mul_atom(&mut self, atom: Atom, e: i64) {
        let slot = self.atoms.entry(atom.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.atoms.remove(&atom);
        }
    }

    pub fn mul(&self, other: &FactorLedger) -> FactorLedger {
        let mut out = self.clone();
        for (a, e) in &other.atoms {
            out.mul_atom(a.clone(), *e);
        }
        out
    }

    pub fn inverse(&self) -> FactorLedger {
        FactorLedger { atoms: self.atoms.iter().map(|(a, e)| (a.clone(), -e)).collect() }
    }

    pub fn is_one(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn exponent(&self, atom: &Atom) -> i64 {
        self.atoms.get(atom).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, i64)> {
        self.atoms.iter().map(|(a, e)| (a, *e))
    }

    /// Total number of atoms counted with multiplicity.
    pub fn degree(&self) -> i64 {
        self.atoms.values().map(|e| e.abs()).sum()
    }

    pub fn numerator(&self) -> Vec<(Atom, i64)> {
        self.iter().filter(|(_, e)| *e > 0).map(|(a, e)| (a.clone(), e)).collect()
    }

    pub fn denominator(&self) -> Vec<(Atom, i64)> {
        self.iter().filter(|(_, e)| *e < 0).map(|(a, e)| (a.clone(), -e)).collect()
    }

    /// Specializes `s = 0`; `|κ|^{cs}` factors become 1.
    pub fn at_zero(&self) -> FactorLedger {
        let mut out = FactorLedger::one();
        for (a, e) in self.iter() {
            if a.kind == AtomKind::Abs {
                continue;
            }
            out.mul_atom(Atom { s_coeff: 0, ..a.clone() }, e);
        }
        out
    }
}

impl fmt::Display for FactorLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> =
            self.iter().map(|(a, e)| if e == 1 { a.to_string() } else { format!("{a}^{e}") }).collect();
        f.write_str(&parts.join(" * "))
    }
}

#[derive(Serialize, Deserialize)]
struct AtomJson {
    #[serde(flatten)]
    atom: Atom,
    exp: i64,
}

impl Serialize for FactorLedger {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.iter().map(|(a, e)| AtomJson { atom: a.clone(), exp: e }).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FactorLedger {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<FactorLedger, D::Error> {
        let raw = Vec::<AtomJson>::deserialize(d)?;
        let mut out = FactorLedger::one();
        for j in raw {
            out.mul_atom(j.atom, j.exp);
        }
        Ok(out)
    }
}

fn operand_of(rho: &IrrSymbol) -> (String, bool) {
    let mut name = rho.id.clone();
    if !rho.twist.is_empty() {
        name.push('.');
        name.push_str(&rho.twist.to_string());
    }
    (name, rho.dual)
}

/// `(summand, shift, multiplicity)` for each `L(s + shift, ρ)` in the expansion.
fn expansion(psi_tau: &AParameter) -> Vec<(&Summand, HalfInt, u32)> {
    let mut out = Vec::new();
    for (s, m) in psi_tau.summands() {
        for j in 1..=s.b as i64 {
            let x = HalfInt::from_doubled(s.a as i64 + s.b as i64 - 2 * j) + s.half_shift;
            out.push((s, x, *m));
        }
    }
    out
}

/// `L(s,τ) = ∏_i ∏_{j=1}^{b_i} L(s + (a_i+b_i)/2 - j, ρ_i)`.
pub fn l_factor_expansion(psi_tau: &AParameter) -> FactorLedger {
    let mut out = FactorLedger::one();
    for (s, x, m) in expansion(psi_tau) {
        let (name, dual) = operand_of(&s.rho);
        out.mul_atom(Atom::l(name, dual, 1, x), m as i64);
    }
    out
}

/// Half-width `N` of a vertical stripe `|Re s| < N` containing every pole of
/// `L(s,τ)`, where only factors of the trivial character have poles (on `Re s = -shift`).
/// Fails unless `N < k = dim τ`.
pub fn stripe_bound(psi_tau: &AParameter) -> Result<HalfInt> {
    let k = psi_tau.target_dim();
    if k == 0 {
        return Err(Error::InvalidParameter("tau must have positive dimension".into()));
    }
    let widest = expansion(psi_tau)
        .into_iter()
        .filter(|(s, _, _)| s.rho.is_trivial_character())
        .map(|(_, x, _)| x.abs())
        .max();
    let n = widest.unwrap_or(HalfInt::ZERO) + HalfInt::from_doubled(1);
    if n.doubled() >= 2 * k as i64 {
        return Err(Error::InvalidParameter(format!("stripe half-width {n} is not below k = {k}")));
    }
    Ok(n)
}

// ---------------------------------------------------------------------------
// Sign words
// ---------------------------------------------------------------------------

pub mod sym {
    pub const EPS: &str = "eps";
    pub const GAMMA_V: &str = "gamma_V";
    pub const GAMMA_W: &str = "gamma_W";
    pub const LAMBDA_O: &str = "lambda(E'/F)";
    pub const LAMBDA_U: &str = "lambda(E/F)";
    pub const OMEGA_M1: &str = "omega_tau(-1)";
    pub const OMEGA_C: &str = "omega_tau(c)";
    pub const OMEGA_DELTA: &str = "omega_tau(delta)";
    pub const CHI_V_M1: &str = "chi_V(-1)";
    pub const CHI_V_C: &str = "chi_V(c)";
    pub const CHI_V_DELTA: &str = "chi_V(delta)";
    pub const CHI_W_M1: &str = "chi_W(-1)";
    pub const CHI_W_C: &str = "chi_W(c)";
    pub const CHI_W_DELTA: &str = "chi_W(delta)";
}

/// A word in named constants, an element of the free abelian group on their names.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignWord(BTreeMap<String, i64>);

impl SignWord {
    pub fn one() -> SignWord {
        SignWord::default()
    }

    pub fn sym(name: &str, e: i64) -> SignWord {
        let mut w = SignWord::one();
        w.push(name, e);
        w
    }

    pub fn push(&mut self, name: &str, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.0.entry(name.to_string()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.0.remove(name);
        }
    }

    pub fn mul(&self, other: &SignWord) -> SignWord {
        let mut out = self.clone();
        for (n, e) in &other.0 {
            out.push(n, *e);
        }
        out
    }

    pub fn pow(&self, k: i64) -> SignWord {
        SignWord(self.0.iter().filter(|_| k != 0).map(|(n, e)| (n.clone(), e * k)).collect())
    }

    pub fn inverse(&self) -> SignWord {
        self.pow(-1)
    }

    pub fn exponent(&self, name: &str) -> i64 {
        self.0.get(name).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(n, e)| (n.as_str(), *e))
    }

    /// Replaces every occurrence of `name` by `by`.
    pub fn substitute(&self, name: &str, by: &SignWord) -> SignWord {
        let e = self.exponent(name);
        let mut rest = self.clone();
        rest.0.remove(name);
        rest.mul(&by.pow(e))
    }

    pub fn reduce(&self, rules: &SignRules) -> SignWord {
        let mut w = self.clone();
        for (x, by) in &rules.squares {
            let e = w.exponent(x);
            let (q, r) = (e.div_euclid(2), e.rem_euclid(2));
            w.0.remove(x);
            w.push(x, r);
            w = w.mul(&by.pow(q));
        }
        for x in &rules.order_two {
            let e = w.exponent(x);
            w.0.remove(x);
            w.push(x, e.rem_euclid(2));
        }
        for x in &rules.trivial {
            w.0.remove(x);
        }
        w
    }

    /// Value under a ±1 oracle. Every symbol present must have a value.
    pub fn evaluate(&self, oracle: &BTreeMap<String, Sign>) -> Result<Sign> {
        let mut acc = Sign::Plus;
        for (n, e) in self.iter() {
            let v = oracle.get(n).ok_or_else(|| Error::MissingOracle(n.to_string()))?;
            acc = acc * v.pow(e);
        }
        Ok(acc)
    }
}

impl fmt::Display for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> =
            self.iter().map(|(n, e)| if e == 1 { n.to_string() } else { format!("{n}^{e}") }).collect();
        f.write_str(&parts.join("*"))
    }
}

impl Serialize for SignWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.iter().collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<SignWord, D::Error> {
        let raw = Vec::<(String, i64)>::deserialize(d)?;
        let mut w = SignWord::one();
        for (n, e) in raw {
            w.push(&n, e);
        }
        Ok(w)
    }
}

/// Relations among the constants that hold in a given case.
#[derive(Clone, Debug, Default)]
pub struct SignRules {
    /// Symbols known to be ±1.
    pub order_two: BTreeSet<String>,
    /// `x^2 = word`.
    pub squares: BTreeMap<String, SignWord>,
    /// Symbols equal to 1.
    pub trivial: BTreeSet<String>,
}

impl SignRules {
    /// Relations coming from `χ_V|_{F^×} = ω_{E/F}^{dim V}`, `χ_W|_{F^×} = ω_{E/F}^{dim W}`
    /// (Case U), `χ_V` quadratic and `χ_W` trivial (Case O), and `δ^2 = -N(δ)`.
    pub fn for_case(case: Case) -> SignRules {
        use sym::*;
        let mut r = SignRules::default();
        for s in [EPS, OMEGA_M1, CHI_V_M1, CHI_W_M1] {
            r.order_two.insert(s.into());
        }
        match case {
            Case::O => {
                r.order_two.insert(CHI_V_C.into());
                for s in [CHI_W_M1, CHI_W_C, CHI_W_DELTA, GAMMA_W] {
                    r.trivial.insert(s.into());
                }
            }
            Case::U0 | Case::U1 => {
                r.squares.insert(CHI_V_DELTA.into(), SignWord::sym(CHI_V_M1, 1));
                r.squares.insert(CHI_W_DELTA.into(), SignWord::sym(CHI_W_M1, 1));
                // The character attached to the even-dimensional space is trivial on F^×.
                r.trivial.insert(if case == Case::U0 { CHI_V_M1 } else { CHI_W_M1 }.into());
            }
        }
        r
    }
}

/// The values of `γ_V` and `γ_W` relative to the Whittaker data of `G` and `H`.
pub fn whittaker_identities(case: Case) -> Vec<(&'static str, SignWord)> {
    use sym::*;
    match case {
        Case::O => vec![
            (GAMMA_V, SignWord::sym(EPS, 1).mul(&SignWord::sym(CHI_V_C, 1)).mul(&SignWord::sym(LAMBDA_O, 1))),
            (GAMMA_W, SignWord::one()),
        ],
        Case::U0 => vec![
            (GAMMA_V, SignWord::sym(EPS, 1)),
            (GAMMA_W, SignWord::sym(CHI_W_DELTA, -1).mul(&SignWord::sym(LAMBDA_U, 1))),
        ],
        Case::U1 => vec![
            (GAMMA_V, SignWord::sym(EPS, 1).mul(&SignWord::sym(LAMBDA_U, 1))),
            (GAMMA_W, SignWord::sym(CHI_W_DELTA, -1)),
        ],
    }
}

/// Substitutes [`whittaker_identities`] and reduces with [`SignRules::for_case`].
pub fn simplify(word: &SignWord, case: Case) -> SignWord {
    let mut w = word.clone();
    for (name, by) in whittaker_identities(case) {
        w = w.substitute(name, &by);
    }
    w.reduce(&SignRules::for_case(case))
}

/// `χ((-1)^m · c^p · δ^d) = χ(-1)^m χ(c)^p χ(δ)^d`.
fn char_at(ch: &str, m1: i64, c: i64, delta: i64) -> SignWord {
    let mut w = SignWord::one();
    w.push(&format!("{ch}(-1)"), m1);
    w.push(&format!("{ch}(c)"), c);
    w.push(&format!("{ch}(delta)"), delta);
    w
}

/// Exponents of `(-1, c, δ)` in `κ_V` and `κ_W`.
fn kappas(case: Case) -> ([i64; 3], [i64; 3]) {
    match case {
        Case::O => ([0, 1, 0], [0, 0, 0]),
        Case::U0 => ([1, 0, 1], [1, 0, 1]),
        Case::U1 => ([1, 0, 0], [0, 0, 0]),
    }
}

/// The constant `α` comparing the two normalized intertwining operators, with
/// characters expanded multiplicatively and `λ(w̃_P)`, `λ(w̃_Q)` written in terms
/// of the Langlands λ-factor. `γ_V` and `γ_W` stay symbolic.
pub fn alpha_symbol(case: Case, k: u32, n: u32, r: u32) -> Result<SignWord> {
    use sym::*;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let (k, n, r) = (k as i64, n as i64, r as i64);
    let tri = k * (k - 1) / 2;
    let tri_plus = k * (k + 1) / 2;
    match case {
        Case::O => {
            let mut w = SignWord::sym(GAMMA_V, k);
            w.push(CHI_V_M1, k);
            w = w.mul(&char_at("omega_tau", r - n + 1, -1, 0));
            w.push(LAMBDA_O, -k);
            Ok(w)
        }
        Case::U0 | Case::U1 => {
            let (dim_v, dim_w) = if case == Case::U0 { (2 * n, 2 * r + 1) } else { (2 * n - 1, 2 * r) };
            let (np, rp) = (dim_v / 2, dim_w / 2);
            let (kv, kw) = kappas(case);
            let mut inner = SignWord::sym(GAMMA_W, -1);
            inner.push(GAMMA_V, 1);
            inner = inner.mul(&char_at("chi_W", np - 1 - kv[0], -kv[1], -kv[2]));
            inner = inner.mul(&char_at("chi_V", rp - 1 - kw[0], -kw[1], -kw[2]));
            inner.push(CHI_W_DELTA, -dim_v);
            inner.push(CHI_V_DELTA, dim_w);
            let mut w = inner.pow(k);
            // κ_W^c: conjugation fixes -1 and c and sends δ to -δ.
            let kw_conj = [kw[0] + kw[2], kw[1], kw[2]];
            w = w.mul(&char_at("omega_tau", np + rp - 1 + kw_conj[0] - kv[0], kw_conj[1] - kv[1], kw_conj[2] - kv[2]));
            let (lq, lp) = if case == Case::U0 { (tri_plus, tri) } else { (tri, tri_plus) };
            w.push(LAMBDA_U, lq - lp);
            Ok(w)
        }
    }
}

// ---------------------------------------------------------------------------
// β(s)
// ---------------------------------------------------------------------------

pub const TAU: &str = "tau";
const KAPPA_RATIO: &str = "|kappa_W/kappa_V|";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaResult {
    pub ledger: FactorLedger,
    pub sign: SignWord,
    pub k: u64,
    pub n: u32,
    pub r: u32,
    /// Whether `(φ_τ^c)^∨ = φ_τ`, in which case no `dual` flag is attached to τ-atoms.
    pub tau_self_dual: bool,
}

/// `(ψ^c)^∨` computed summand by summand.
pub fn conjugate_dual(psi: &AParameter) -> Result<AParameter> {
    psi.with_summands(psi.summands().iter().map(|(s, m)| (s.dual_partner(), *m)).collect())
}

/// `φ₀χ_W^{-1}χ_V + ⊕_{j=n-r}^{r-n} χ_V|·|^j`.
pub fn expected_theta_l_parameter(phi_0: &AParameter, n: u32, r: u32, pair: TwistPair) -> Result<AParameter> {
    let joint = pair.joint();
    let mut summands: Vec<(Summand, u32)> = phi_0
        .summands()
        .iter()
        .map(|(s, m)| {
            let mut t = s.clone();
            t.rho.twist = t.rho.twist.mul(&joint);
            (t, *m)
        })
        .collect();
    let chi_v = IrrSymbol::trivial(phi_0.case()).with_twist(TwistWord::gen(pair.v, 1));
    let d = r as i64 - n as i64;
    for j in -d..=d {
        summands.push((Summand::new(chi_v.clone(), 1, 1).shifted(HalfInt::from_int(j)), 1));
    }
    AParameter::new(phi_0.case(), Side::H, h_dim(phi_0.case(), r), summands)
}

fn find_pair(phi_0: &AParameter, theta_phi_0: &AParameter, n: u32, r: u32) -> Option<TwistPair> {
    let mut v = BTreeSet::from([TwistGen::V]);
    let mut w = BTreeSet::from([TwistGen::W]);
    for (s, _) in theta_phi_0.summands() {
        for (g, _) in s.rho.twist.iter() {
            match g.role {
                TwistRole::V => v.insert(g),
                TwistRole::W => w.insert(g),
            };
        }
    }
    v.iter().flat_map(|&v| w.iter().map(move |&w| TwistPair { v, w })).find(|&pair| {
        expected_theta_l_parameter(phi_0, n, r, pair).ok().as_ref() == Some(theta_phi_0)
    })
}

/// The ledger of `β(s)`, with the last two γ-factors rewritten as
/// `∏_{j=n-r}^{r-n} γ(s+j, φ_τ)^{-1}` after checking the shape of `φ'₀`.
pub fn beta(
    psi_tau: &AParameter,
    phi_0: &AParameter,
    theta_phi_0: &AParameter,
    n: u32,
    r: u32,
) -> Result<BetaResult> {
    let bad = |why: String| Error::InconsistentPair(why);
    if r <= n {
        return Err(bad(format!("need r > n, got r = {r}, n = {n}")));
    }
    if psi_tau.target_dim() == 0 {
        return Err(bad("tau must have positive dimension".into()));
    }
    if phi_0.side() != Side::G || phi_0.witt_n()? != n {
        return Err(bad(format!("phi_0 is not a G-side parameter with n = {n}")));
    }
    if phi_0.summands().iter().any(|(s, _)| s.b != 1) {
        return Err(bad("phi_0 must be an L-parameter (all b = 1)".into()));
    }
    if psi_tau.case() != phi_0.case() || theta_phi_0.case() != phi_0.case() {
        return Err(bad("parameters belong to different cases".into()));
    }
    if find_pair(phi_0, theta_phi_0, n, r).is_none() {
        return Err(bad("theta_phi_0 is not phi_0 twisted plus the chi_V|.|^j block".into()));
    }
    let k = psi_tau.target_dim();
    let tau_self_dual = conjugate_dual(psi_tau)? == *psi_tau;
    let s0 = HalfInt::from_int(r as i64 - n as i64);
    let mut l = FactorLedger::one();
    l.mul_atom(Atom::l(TAU, false, 1, -s0), -1);
    l.mul_atom(Atom::l(TAU, !tau_self_dual, -1, -s0), 1);
    l.mul_atom(Atom::gamma(TAU, !tau_self_dual, -1, -s0), 1);
    let ks = i32::try_from(k).map_err(|_| bad("k too large".into()))?;
    l.mul_atom(Atom { kind: AtomKind::Abs, operand: KAPPA_RATIO.into(), dual: false, s_coeff: ks, shift: HalfInt::ZERO }, 1);
    let d = r as i64 - n as i64;
    for j in -d..=d {
        l.mul_atom(Atom::gamma(TAU, false, 1, HalfInt::from_int(j)), -1);
    }
    Ok(BetaResult { ledger: l, sign: SignWord::one(), k, n, r, tau_self_dual })
}

/// Sets `s = 0`, cancels, and folds `γ(x,τ)·γ(1-x,τ^∨) = ω_τ(-1)`.
/// Anything left over is reported as a ledger in unexpected form.
pub fn evaluate_beta_at_zero(res: &BetaResult) -> Result<SignWord> {
    let mut l = res.ledger.at_zero();
    let mut omega = 0i64;
    loop {
        let Some((atom, e)) = l.iter().find(|(a, _)| a.kind == AtomKind::Gamma).map(|(a, e)| (a.clone(), e)) else {
            break;
        };
        let partner = Atom {
            shift: HalfInt::from_int(1) - atom.shift,
            dual: if res.tau_self_dual { atom.dual } else { !atom.dual },
            ..atom.clone()
        };
        if partner == atom {
            if e % 2 != 0 {
                return Err(Error::LedgerNotInExpectedForm(format!("{atom} has odd exponent {e}")));
            }
            omega += e / 2;
            l.mul_atom(atom, -e);
            continue;
        }
        let f = l.exponent(&partner);
        if f != e {
            return Err(Error::LedgerNotInExpectedForm(format!(
                "{atom} occurs with exponent {e} but its functional-equation partner {partner} with {f}"
            )));
        }
        omega += e;
        l.mul_atom(atom, -e);
        l.mul_atom(partner, -e);
    }
    if !l.is_one() {
        return Err(Error::LedgerNotInExpectedForm(format!("leftover factors {l}")));
    }
    let mut rules = SignRules::default();
    rules.order_two.insert(sym::OMEGA_M1.into());
    Ok(res.sign.mul(&SignWord::sym(sym::OMEGA_M1, omega)).reduce(&rules))
}
