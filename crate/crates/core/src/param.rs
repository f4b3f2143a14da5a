//! Parameter symbols, summands and A-parameters.
//!
//! An A-parameter is stored as a canonical multiset of summands
//! `rho ⊠ S_a ⊠ S_b`, each carrying an optional half-integral twist
//! `|·|^x` that only appears after expanding into L-parameters.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{HalfInt, Sign};
use crate::error::{Error, Result};

/// Which of the three dual-pair families we are in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Case {
    O,
    U0,
    U1,
}

impl Case {
    pub fn is_unitary(self) -> bool {
        self != Case::O
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::O => "O",
            Case::U0 => "U0",
            Case::U1 => "U1",
        })
    }
}

impl FromStr for Case {
    type Err = Error;
    fn from_str(s: &str) -> Result<Case> {
        match s {
            "O" => Ok(Case::O),
            "U0" => Ok(Case::U0),
            "U1" => Ok(Case::U1),
            _ => Err(Error::InvalidParameter(format!("unknown case `{s}`"))),
        }
    }
}

/// The smaller group `G`, the stable-range partner `H`, or a general linear
/// group (used for the `psi_tau` inputs of the factor ledger and induction).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    G,
    H,
    #[serde(rename = "GL")]
    Gl,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::G => "G",
            Side::H => "H",
            Side::Gl => "GL",
        })
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Side> {
        match s {
            "G" => Ok(Side::G),
            "H" => Ok(Side::H),
            "GL" => Ok(Side::Gl),
            _ => Err(Error::InvalidParameter(format!("unknown side `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Duality {
    #[serde(rename = "orth")]
    Orthogonal,
    #[serde(rename = "symp")]
    Symplectic,
    #[serde(rename = "corth")]
    ConjOrthogonal,
    #[serde(rename = "csymp")]
    ConjSymplectic,
    #[serde(rename = "none")]
    None,
}

impl Duality {
    /// Tensoring with a representation of sign `s`.
    pub fn twist_by(self, s: Sign) -> Duality {
        if s == Sign::Plus {
            return self;
        }
        match self {
            Duality::Orthogonal => Duality::Symplectic,
            Duality::Symplectic => Duality::Orthogonal,
            Duality::ConjOrthogonal => Duality::ConjSymplectic,
            Duality::ConjSymplectic => Duality::ConjOrthogonal,
            Duality::None => Duality::None,
        }
    }

    pub fn is_self_dual(self) -> bool {
        self != Duality::None
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Duality::Orthogonal => "orth",
            Duality::Symplectic => "symp",
            Duality::ConjOrthogonal => "corth",
            Duality::ConjSymplectic => "csymp",
            Duality::None => "none",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Duality> {
        Some(match s {
            "orth" => Duality::Orthogonal,
            "symp" => Duality::Symplectic,
            "corth" => Duality::ConjOrthogonal,
            "csymp" => Duality::ConjSymplectic,
            "none" => Duality::None,
            _ => return None,
        })
    }
}

/// The parity every summand of a good-parity parameter must have.
pub fn parameter_parity(case: Case, side: Side) -> Option<Duality> {
    match (case, side) {
        (_, Side::Gl) => None,
        (Case::O, _) => Some(Duality::Orthogonal),
        (Case::U0, Side::G) | (Case::U1, Side::H) => Some(Duality::ConjSymplectic),
        (Case::U1, Side::G) | (Case::U0, Side::H) => Some(Duality::ConjOrthogonal),
    }
}

/// Whether `target_dim` must be even (`Some(true)`), odd, or is free.
fn target_dim_even(case: Case, side: Side) -> Option<bool> {
    match (case, side) {
        (_, Side::Gl) => None,
        (Case::O, Side::G) | (Case::U0, Side::G) | (Case::U1, Side::H) => Some(true),
        (Case::O, Side::H) | (Case::U0, Side::H) | (Case::U1, Side::G) => Some(false),
    }
}

// ---------------------------------------------------------------------------
// Twist words
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TwistRole {
    V,
    W,
}

/// A generator `χ_V` or `χ_W`. `variant` distinguishes alternative admissible
/// choices of the auxiliary pair; the default choice is variant 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwistGen {
    pub role: TwistRole,
    pub variant: u8,
}

impl TwistGen {
    pub const V: TwistGen = TwistGen { role: TwistRole::V, variant: 0 };
    pub const W: TwistGen = TwistGen { role: TwistRole::W, variant: 0 };

    /// Duality sign of the character, fixed by the parity of `dim V` and `dim W`.
    pub fn sign(self, case: Case) -> Sign {
        match (case, self.role) {
            (Case::U0, TwistRole::W) | (Case::U1, TwistRole::V) => Sign::Minus,
            _ => Sign::Plus,
        }
    }
}

impl fmt::Display for TwistGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match self.role {
            TwistRole::V => 'V',
            TwistRole::W => 'W',
        };
        if self.variant == 0 {
            write!(f, "x{r}")
        } else {
            write!(f, "x{r}{}", self.variant)
        }
    }
}

impl FromStr for TwistGen {
    type Err = Error;
    fn from_str(s: &str) -> Result<TwistGen> {
        let bad = || Error::InvalidParameter(format!("bad twist generator `{s}`"));
        let rest = s.strip_prefix('x').ok_or_else(bad)?;
        let mut chars = rest.chars();
        let role = match chars.next() {
            Some('V') => TwistRole::V,
            Some('W') => TwistRole::W,
            _ => return Err(bad()),
        };
        let tail = chars.as_str();
        let variant = if tail.is_empty() {
            0
        } else if tail.bytes().all(|b| b.is_ascii_digit()) {
            tail.parse().map_err(|_| bad())?
        } else {
            return Err(bad());
        };
        Ok(TwistGen { role, variant })
    }
}

/// Element of the free abelian group on the twist generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwistWord(BTreeMap<TwistGen, i32>);

impl TwistWord {
    pub fn empty() -> TwistWord {
        TwistWord::default()
    }

    pub fn gen(g: TwistGen, e: i32) -> TwistWord {
        let mut w = TwistWord::empty();
        w.push(g, e);
        w
    }

    pub fn push(&mut self, g: TwistGen, e: i32) {
        let slot = self.0.entry(g).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.0.remove(&g);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &TwistWord) -> TwistWord {
        let mut out = self.clone();
        for (&g, &e) in &other.0 {
            out.push(g, e);
        }
        out
    }

    pub fn inverse(&self) -> TwistWord {
        TwistWord(self.0.iter().map(|(&g, &e)| (g, -e)).collect())
    }

    pub fn exponent(&self, g: TwistGen) -> i32 {
        self.0.get(&g).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (TwistGen, i32)> + '_ {
        self.0.iter().map(|(&g, &e)| (g, e))
    }

    pub fn sign(&self, case: Case) -> Sign {
        Sign::product(self.iter().map(|(g, e)| g.sign(case).pow(e as i64)))
    }

    /// Factors in canonical order, e.g. `["xV", "xW^-1"]`.
    pub fn factors(&self) -> Vec<String> {
        self.iter()
            .map(|(g, e)| if e == 1 { g.to_string() } else { format!("{g}^{e}") })
            .collect()
    }

    pub fn parse_factor(s: &str) -> Result<(TwistGen, i32)> {
        match s.split_once('^') {
            None => Ok((s.parse()?, 1)),
            Some((g, e)) => {
                let e: i32 = e
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad twist exponent in `{s}`")))?;
                Ok((g.parse()?, e))
            }
        }
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.factors().join("*"))
    }
}

impl Serialize for TwistWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.factors().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwistWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<TwistWord, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let mut w = TwistWord::empty();
        for f in raw {
            let (g, e) = TwistWord::parse_factor(&f).map_err(serde::de::Error::custom)?;
            w.push(g, e);
        }
        Ok(w)
    }
}

// ---------------------------------------------------------------------------
// Symbols and summands
// ---------------------------------------------------------------------------

/// An abstract irreducible representation of the Weil group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IrrSymbol {
    pub id: String,
    pub dim: u32,
    pub duality: Duality,
    #[serde(default, skip_serializing_if = "TwistWord::is_empty")]
    pub twist: TwistWord,
    #[serde(default)]
    pub contains_trivial: bool,
    /// Marks the contragredient of a symbol with duality `none`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub dual: bool,
    /// Oracle values of `det(rho)` at named field elements.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub det_at: BTreeMap<String, Sign>,
}

/// Name of the base symbol used for `χ_V ⊠ S_1 ⊠ S_m` summands.
pub const TRIVIAL_ID: &str = "trivial";

impl IrrSymbol {
    pub fn new(id: impl Into<String>, dim: u32, duality: Duality) -> IrrSymbol {
        IrrSymbol {
            id: id.into(),
            dim,
            duality,
            twist: TwistWord::empty(),
            contains_trivial: false,
            dual: false,
            det_at: BTreeMap::new(),
        }
    }

    /// The trivial character, self-dual of the sign-`+` type for `case`.
    pub fn trivial(case: Case) -> IrrSymbol {
        let duality = if case.is_unitary() { Duality::ConjOrthogonal } else { Duality::Orthogonal };
        let mut s = IrrSymbol::new(TRIVIAL_ID, 1, duality);
        s.contains_trivial = true;
        s.det_at.insert("-1".into(), Sign::Plus);
        s
    }

    pub fn with_twist(mut self, twist: TwistWord) -> IrrSymbol {
        self.twist = twist;
        self
    }

    pub fn with_det(mut self, at: impl Into<String>, v: Sign) -> IrrSymbol {
        self.det_at.insert(at.into(), v);
        self
    }

    pub fn trivial_constituent(mut self) -> IrrSymbol {
        self.contains_trivial = true;
        self
    }

    /// Whether the symbol, twist included, is literally the trivial character.
    pub fn is_trivial_character(&self) -> bool {
        self.contains_trivial && self.twist.is_empty()
    }

    /// Duality of `rho` after applying its twist word.
    pub fn effective_duality(&self, case: Case) -> Duality {
        self.duality.twist_by(self.twist.sign(case))
    }

    /// Contragredient: inverted twist, toggled `dual` flag for non-self-dual symbols.
    pub fn contragredient(&self) -> IrrSymbol {
        let mut out = self.clone();
        out.twist = self.twist.inverse();
        if self.duality == Duality::None {
            out.dual = !self.dual;
        }
        out
    }

    /// The conjugate-dual partner used for pairing checks; twists are fixed
    /// because every twist character satisfies `(χ^c)^∨ = χ`.
    pub fn dual_partner(&self) -> IrrSymbol {
        let mut out = self.clone();
        if self.duality == Duality::None {
            out.dual = !self.dual;
        }
        out
    }

    pub fn label(&self) -> String {
        let mut s = self.id.clone();
        if self.dual {
            s.push('~');
        }
        if !self.twist.is_empty() {
            s.push('.');
            s.push_str(&self.twist.to_string());
        }
        s
    }

    fn normalize(&mut self) {
        if self.duality != Duality::None {
            self.dual = false;
        }
    }
}

/// `rho ⊠ S_a ⊠ S_b`, possibly twisted by `|·|^half_shift`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Summand {
    pub rho: IrrSymbol,
    pub a: u32,
    pub b: u32,
    pub half_shift: HalfInt,
}

impl Summand {
    pub fn new(rho: IrrSymbol, a: u32, b: u32) -> Summand {
        Summand { rho, a, b, half_shift: HalfInt::ZERO }
    }

    pub fn shifted(mut self, x: HalfInt) -> Summand {
        self.half_shift = x;
        self
    }

    pub fn dim(&self) -> u64 {
        self.checked_dim().expect("summand dimension overflows u64")
    }

    pub fn checked_dim(&self) -> Option<u64> {
        (self.rho.dim as u64).checked_mul(self.a as u64)?.checked_mul(self.b as u64)
    }

    /// Same symbol with different SL₂ dimensions.
    pub fn with_ab(&self, a: u32, b: u32) -> Summand {
        Summand { rho: self.rho.clone(), a, b, half_shift: self.half_shift }
    }

    /// `Some(duality)` when the summand is (conjugate) self-dual.
    pub fn self_duality(&self, case: Case) -> Option<Duality> {
        if self.half_shift != HalfInt::ZERO || self.rho.duality == Duality::None {
            return None;
        }
        let sl2_sign = Sign::from_bool_minus(self.a % 2 != self.b % 2);
        Some(self.rho.effective_duality(case).twist_by(sl2_sign))
    }

    pub fn is_same_parity(&self, case: Case, side: Side) -> bool {
        match parameter_parity(case, side) {
            Some(p) => self.self_duality(case) == Some(p),
            None => false,
        }
    }

    pub fn dual_partner(&self) -> Summand {
        Summand { rho: self.rho.dual_partner(), a: self.a, b: self.b, half_shift: -self.half_shift }
    }

    pub fn contragredient(&self) -> Summand {
        Summand { rho: self.rho.contragredient(), a: self.a, b: self.b, half_shift: -self.half_shift }
    }

    /// The symbol `rho|·|^x` with SL₂ data stripped, used to group summands by `rho`.
    pub fn rho_key(&self) -> (IrrSymbol, HalfInt) {
        (self.rho.clone(), self.half_shift)
    }

    fn sort_key(&self) -> impl Ord + '_ {
        (
            (&self.rho.id, &self.rho.twist, self.a, self.b, self.half_shift),
            (self.rho.dual, self.rho.dim, self.rho.duality, self.rho.contains_trivial, &self.rho.det_at),
        )
    }
}

impl PartialOrd for Summand {
    fn partial_cmp(&self, other: &Summand) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Summand {
    fn cmp(&self, other: &Summand) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// Parity of a summand; fails if the base symbol has duality `none`.
pub fn duality_of_summand(s: &Summand, case: Case) -> Result<Duality> {
    if s.rho.duality == Duality::None {
        return Err(Error::UndeterminedParity(s.rho.label()));
    }
    s.self_duality(case).ok_or_else(|| Error::UndeterminedParity(format!("{}|.|^{}", s.rho.label(), s.half_shift)))
}

// ---------------------------------------------------------------------------
// A-parameters
// ---------------------------------------------------------------------------

/// A canonically ordered multiset of summands with its case and side tags.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AParameter {
    case: Case,
    side: Side,
    target_dim: u64,
    summands: Vec<(Summand, u32)>,
}

impl AParameter {
    /// Builds and validates a parameter. Repeated summands are merged.
    pub fn new(case: Case, side: Side, target_dim: u64, summands: Vec<(Summand, u32)>) -> Result<AParameter> {
        let mut merged: BTreeMap<Summand, u32> = BTreeMap::new();
        let mut total: u64 = 0;
        for (mut s, m) in summands {
            if m == 0 {
                continue;
            }
            if s.a == 0 || s.b == 0 {
                return Err(Error::InvalidParameter("SL2 dimensions must be positive".into()));
            }
            if s.a as u64 + s.b as u64 > u32::MAX as u64 / 2 {
                return Err(Error::InvalidParameter("SL2 dimensions too large".into()));
            }
            if s.rho.dim == 0 {
                return Err(Error::InvalidParameter(format!("symbol `{}` has dimension 0", s.rho.id)));
            }
            s.rho.normalize();
            let d = s
                .checked_dim()
                .and_then(|d| d.checked_mul(m as u64))
                .and_then(|d| total.checked_add(d))
                .ok_or_else(|| Error::InvalidParameter("dimension overflow".into()))?;
            total = d;
            let slot = merged.entry(s).or_insert(0);
            *slot = slot
                .checked_add(m)
                .ok_or_else(|| Error::InvalidParameter("multiplicity overflow".into()))?;
        }
        if total != target_dim {
            return Err(Error::InvalidParameter(format!(
                "summand dimensions add up to {total}, not target_dim {target_dim}"
            )));
        }
        if let Some(even) = target_dim_even(case, side) {
            if (target_dim % 2 == 0) != even {
                let which = if even { "even" } else { "odd" };
                return Err(Error::InvalidParameter(format!(
                    "target_dim must be {which} in case {case} side {side}"
                )));
            }
        }
        let summands: Vec<(Summand, u32)> = merged.into_iter().collect();
        if side != Side::Gl {
            for (s, m) in &summands {
                if s.self_duality(case).is_some() {
                    continue;
                }
                let partner = s.dual_partner();
                let pm = summands.iter().find(|(t, _)| *t == partner).map(|(_, m)| *m);
                if pm != Some(*m) {
                    return Err(Error::InvalidParameter(format!(
                        "summand {} is not self-dual and lacks its dual partner with multiplicity {m}",
                        display_summand(s)
                    )));
                }
            }
        }
        Ok(AParameter { case, side, target_dim, summands })
    }

    /// The empty parameter (trivial group).
    pub fn empty(case: Case, side: Side) -> AParameter {
        AParameter { case, side, target_dim: 0, summands: Vec::new() }
    }

    /// Rebuilds with a new summand list, keeping case and side; the target
    /// dimension is recomputed.
    pub fn with_summands(&self, summands: Vec<(Summand, u32)>) -> Result<AParameter> {
        let total = summands.iter().map(|(s, m)| s.dim() * *m as u64).sum();
        AParameter::new(self.case, self.side, total, summands)
    }

    pub fn case(&self) -> Case {
        self.case
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn target_dim(&self) -> u64 {
        self.target_dim
    }

    pub fn summands(&self) -> &[(Summand, u32)] {
        &self.summands
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn multiplicity(&self, s: &Summand) -> u32 {
        self.summands.iter().find(|(t, _)| t == s).map(|(_, m)| *m).unwrap_or(0)
    }

    /// The index set `I_ψ`: summands repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<Summand> {
        self.summands
            .iter()
            .flat_map(|(s, m)| std::iter::repeat_n(s.clone(), *m as usize))
            .collect()
    }

    pub fn parity(&self) -> Option<Duality> {
        parameter_parity(self.case, self.side)
    }

    /// The integer `n` of the smaller group for a `G`-side parameter.
    pub fn witt_n(&self) -> Result<u32> {
        if self.side != Side::G {
            return Err(Error::InvalidParameter("n is only defined for G-side parameters".into()));
        }
        let n = match self.case {
            Case::O | Case::U0 => self.target_dim / 2,
            Case::U1 => self.target_dim.div_ceil(2),
        };
        u32::try_from(n).map_err(|_| Error::InvalidParameter("dimension too large".into()))
    }

    /// Same summands, different side tag (validated again).
    pub fn retagged(&self, side: Side) -> Result<AParameter> {
        AParameter::new(self.case, side, self.target_dim, self.summands.clone())
    }

    /// Contragredient parameter.
    pub fn contragredient(&self) -> AParameter {
        let summands = self.summands.iter().map(|(s, m)| (s.contragredient(), *m)).collect();
        AParameter::new(self.case, self.side, self.target_dim, summands)
            .expect("contragredient of a valid parameter is valid")
    }
}

pub fn display_summand(s: &Summand) -> String {
    let mut out = s.rho.label();
    if s.half_shift != HalfInt::ZERO {
        out.push_str(&format!("|.|^{}", s.half_shift));
    }
    format!("{out}⊠S{}⊠S{}", s.a, s.b)
}

impl fmt::Display for AParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::print_parameter(self))
    }
}

// JSON form: {case, side, target_dim, summands: [{rho, a, b, half_shift_x2, mult}]}

#[derive(Serialize, Deserialize)]
struct SummandJson {
    rho: IrrSymbol,
    a: u32,
    b: u32,
    #[serde(default)]
    half_shift_x2: HalfInt,
    #[serde(default = "one")]
    mult: u32,
}

fn one() -> u32 {
    1
}

#[derive(Serialize, Deserialize)]
struct AParameterJson {
    case: Case,
    side: Side,
    target_dim: u64,
    summands: Vec<SummandJson>,
}

impl Serialize for AParameter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AParameterJson {
            case: self.case,
            side: self.side,
            target_dim: self.target_dim,
            summands: self
                .summands
                .iter()
                .map(|(x, m)| SummandJson {
                    rho: x.rho.clone(),
                    a: x.a,
                    b: x.b,
                    half_shift_x2: x.half_shift,
                    mult: *m,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AParameter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<AParameter, D::Error> {
        let raw = AParameterJson::deserialize(d)?;
        let summands = raw
            .summands
            .into_iter()
            .map(|j| (Summand { rho: j.rho, a: j.a, b: j.b, half_shift: j.half_shift_x2 }, j.mult))
            .collect();
        AParameter::new(raw.case, raw.side, raw.target_dim, summands).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orth(id: &str) -> IrrSymbol {
        IrrSymbol::new(id, 1, Duality::Orthogonal)
    }

    #[test]
    fn parity_table() {
        let case = Case::O;
        assert_eq!(duality_of_summand(&Summand::new(orth("r"), 1, 1), case).unwrap(), Duality::Orthogonal);
        assert_eq!(duality_of_summand(&Summand::new(orth("r"), 1, 2), case).unwrap(), Duality::Symplectic);
        let co = IrrSymbol::new("r", 1, Duality::ConjOrthogonal);
        assert_eq!(duality_of_summand(&Summand::new(co, 2, 2), Case::U1).unwrap(), Duality::ConjOrthogonal);
        let none = IrrSymbol::new("r", 1, Duality::None);
        assert!(matches!(
            duality_of_summand(&Summand::new(none, 1, 1), case),
            Err(Error::UndeterminedParity(_))
        ));
    }

    #[test]
    fn twist_words_cancel() {
        let mut w = TwistWord::gen(TwistGen::V, 1);
        w.push(TwistGen::W, -1);
        let back = w.mul(&w.inverse());
        assert!(back.is_empty());
        assert_eq!(w.factors(), vec!["xV".to_string(), "xW^-1".to_string()]);
    }

    #[test]
    fn twist_sign_follows_case() {
        // χ_W^{-1}χ_V flips parity in both unitary cases and nowhere else.
        let mut w = TwistWord::gen(TwistGen::V, 1);
        w.push(TwistGen::W, -1);
        assert_eq!(w.sign(Case::O), Sign::Plus);
        assert_eq!(w.sign(Case::U0), Sign::Minus);
        assert_eq!(w.sign(Case::U1), Sign::Minus);
    }

    #[test]
    fn target_dim_parity_enforced() {
        let s = Summand::new(orth("r"), 3, 1);
        let err = AParameter::new(Case::O, Side::G, 3, vec![(s.clone(), 1)]).unwrap_err();
        assert!(err.to_string().contains("target_dim must be even"));
        assert!(AParameter::new(Case::O, Side::H, 3, vec![(s, 1)]).is_ok());
    }

    #[test]
    fn dimension_sum_enforced() {
        let s = Summand::new(orth("r"), 1, 1);
        assert!(AParameter::new(Case::O, Side::G, 4, vec![(s, 2)]).is_err());
    }

    #[test]
    fn duplicates_merge_and_sort() {
        let a = Summand::new(orth("b"), 1, 1);
        let b = Summand::new(orth("a"), 1, 1);
        let p = AParameter::new(Case::O, Side::G, 4, vec![(a.clone(), 1), (b.clone(), 1), (a.clone(), 2)]).unwrap();
        assert_eq!(p.summands(), &[(b, 1), (a, 3)]);
    }

    #[test]
    fn unpaired_none_rejected() {
        let none = IrrSymbol::new("r", 1, Duality::None);
        let s = Summand::new(none.clone(), 1, 1);
        assert!(AParameter::new(Case::O, Side::G, 2, vec![(s.clone(), 2)]).is_err());
        let partner = s.dual_partner();
        assert!(AParameter::new(Case::O, Side::G, 2, vec![(s, 1), (partner, 1)]).is_ok());
    }

    #[test]
    fn json_roundtrip() {
        let rho = orth("rho").with_det("-1", Sign::Minus).with_twist(TwistWord::gen(TwistGen::V, 1));
        let p = AParameter::new(Case::O, Side::G, 4, vec![(Summand::new(rho, 2, 2), 1)]).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        let q: AParameter = serde_json::from_str(&text).unwrap();
        assert_eq!(p, q);
    }
}
