//! Elliptic global parameters, localization, and the multiplicity-formula membership rule.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::arith::Sign;
use crate::error::{Error, Result};
use crate::group::{component_group, Character};
use crate::ledger::{SignRules, SignWord};
use crate::param::{parameter_parity, AParameter, Case, IrrSymbol, Side, Summand};

/// `ρ_i ⊠ S_{d_i}` with the central character `ω_i` of `ρ_i` as a formal word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalSummand {
    pub rho: IrrSymbol,
    #[serde(default)]
    pub central_character: SignWord,
    pub d: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalParameter {
    pub case: Case,
    pub target_dim: u64,
    /// `χ_V` as a word in the same character names as the `ω_i` (Case O).
    #[serde(default)]
    pub chi_v: SignWord,
    pub summands: Vec<GlobalSummand>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub bullet: String,
    pub detail: String,
}

fn violation(bullet: &str, detail: String) -> Violation {
    Violation { bullet: bullet.into(), detail }
}

/// All failed conditions; empty iff `gp` is an elliptic parameter.
pub fn validate_global(gp: &GlobalParameter) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for s in &gp.summands {
        if !seen.insert((&s.rho, s.d)) {
            out.push(violation("distinctness", format!("({}, {}) occurs twice", s.rho.label(), s.d)));
        }
    }
    if gp.summands.iter().any(|s| s.d == 0 || s.rho.dim == 0) {
        out.push(violation("dimension", "every rho and d must be positive".into()));
    }
    let total: u128 = gp.summands.iter().map(|s| s.rho.dim as u128 * s.d as u128).sum();
    if total != gp.target_dim as u128 {
        out.push(violation("dimension", format!("sum of n_i d_i is {total}, expected {}", gp.target_dim)));
    }
    let odd = parameter_parity(gp.case, Side::G).expect("G side always has a parity");
    let even = odd.twist_by(Sign::Minus);
    for s in &gp.summands {
        let want = if s.d % 2 == 1 { odd } else { even };
        let got = s.rho.effective_duality(gp.case);
        if got != want {
            out.push(violation(
                "parity bullet",
                format!("{} with d = {} is {}, expected {}", s.rho.label(), s.d, got.keyword(), want.keyword()),
            ));
        }
    }
    if gp.case == Case::O {
        let mut prod = gp.chi_v.inverse();
        for s in &gp.summands {
            prod = prod.mul(&s.central_character.pow(s.d as i64));
        }
        // Orthogonal and symplectic ρ have quadratic determinant.
        let rules = SignRules { order_two: prod.iter().map(|(n, _)| n.to_string()).collect(), ..Default::default() };
        let rest = prod.reduce(&rules);
        if !rest.is_one() {
            out.push(violation("central character", format!("prod omega_i^d_i / chi_V = {rest}")));
        }
    }
    out
}

/// A local constituent `ρ_v ⊠ S_a` of some `ρ_i` at a place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalPiece {
    pub rho: IrrSymbol,
    #[serde(default = "one")]
    pub a: u32,
}

fn one() -> u32 {
    1
}

/// Local decomposition of each global `ρ_i` (keyed by `rho.id`) at one place.
pub type PlaceMap = BTreeMap<String, Vec<LocalPiece>>;

/// Place name to place map.
pub type PlaceData = BTreeMap<String, PlaceMap>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Localization {
    pub parameter: AParameter,
    /// `map[i][j]`: coordinate `j` of the image of the `i`-th global basis vector.
    pub map: Vec<Vec<bool>>,
}

impl Localization {
    pub fn apply(&self, x: &[bool]) -> Vec<bool> {
        let rank = self.map.first().map_or(0, |r| r.len());
        let mut out = vec![false; rank];
        for (i, row) in self.map.iter().enumerate() {
            if x.get(i).copied().unwrap_or(false) {
                for (o, b) in out.iter_mut().zip(row) {
                    *o ^= *b;
                }
            }
        }
        out
    }
}

/// `ψ_v = Σ_i (Σ pieces) ⊠ S_{d_i}` with the induced map on component groups.
pub fn localize(gp: &GlobalParameter, place: &PlaceMap) -> Result<Localization> {
    let mut summands = Vec::new();
    let mut per_global = Vec::new();
    for s in &gp.summands {
        let pieces = place.get(&s.rho.id).ok_or_else(|| Error::MissingPlaceData(s.rho.id.clone()))?;
        let dim: u64 = pieces.iter().map(|p| p.rho.dim as u64 * p.a as u64).sum();
        if dim != s.rho.dim as u64 {
            return Err(Error::DimensionMismatch(format!(
                "local pieces of {} have total dimension {dim}, expected {}",
                s.rho.id, s.rho.dim
            )));
        }
        let local: Vec<Summand> = pieces.iter().map(|p| Summand::new(p.rho.clone(), p.a, s.d)).collect();
        summands.extend(local.iter().map(|l| (l.clone(), 1)));
        per_global.push(local);
    }
    let parameter = AParameter::new(gp.case, Side::G, gp.target_dim, summands)?;
    let g = component_group(&parameter, false);
    let map = per_global
        .iter()
        .map(|local| {
            let mut row = vec![false; g.rank()];
            for l in local {
                if let Some(j) = g.index_of(l) {
                    row[j] ^= true;
                }
            }
            row
        })
        .collect();
    Ok(Localization { parameter, map })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalLabel {
    pub id: String,
    pub character: Character,
}

/// Local labels at the ramified places; every other place carries the trivial label.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalPacketMember {
    pub places: BTreeMap<String, LocalLabel>,
}

/// `𝒥(π)(x) = ∏_v 𝒥(π_v)(x_v)`.
pub fn global_character(
    gp: &GlobalParameter,
    data: &PlaceData,
    member: &GlobalPacketMember,
    x: &[bool],
) -> Result<Sign> {
    if x.len() != gp.summands.len() {
        return Err(Error::InvalidPacket(format!("x has {} coordinates, expected {}", x.len(), gp.summands.len())));
    }
    let mut acc = Sign::Plus;
    for (v, label) in &member.places {
        let place = data.get(v).ok_or_else(|| Error::MissingPlaceData(format!("place {v}")))?;
        let loc = localize(gp, place)?;
        let xv = loc.apply(x);
        if label.character.rank() != xv.len() {
            return Err(Error::InvalidPacket(format!(
                "label at {v} has rank {}, local group has rank {}",
                label.character.rank(),
                xv.len()
            )));
        }
        acc = acc * label.character.eval(&xv);
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub accepted: bool,
    /// First basis coordinate where the global character differs from `ε_ψ`.
    pub offending: Option<usize>,
}

/// Whether the member lies in the discrete spectrum: its global character equals `ε_ψ`.
pub fn multiplicity_test(
    gp: &GlobalParameter,
    data: &PlaceData,
    member: &GlobalPacketMember,
    epsilon_psi: &Character,
) -> Result<Verdict> {
    let rank = gp.summands.len();
    if epsilon_psi.rank() != rank {
        return Err(Error::MissingOracle(format!(
            "epsilon_psi has {} values, the global group has rank {rank}",
            epsilon_psi.rank()
        )));
    }
    for i in 0..rank {
        let mut x = vec![false; rank];
        x[i] = true;
        if global_character(gp, data, member, &x)? != epsilon_psi.value(i) {
            return Ok(Verdict { accepted: false, offending: Some(i) });
        }
    }
    Ok(Verdict { accepted: true, offending: None })
}

/// Builds `ε_ψ` from user-supplied root-number signs: `ε_ψ(a_i)` is the product
/// of the signs named in `rule[i]`. Unverified plumbing; nothing checks that the
/// rule is the correct one.
pub fn fold_root_numbers(signs: &BTreeMap<String, Sign>, rule: &[Vec<String>]) -> Result<Character> {
    let values = rule
        .iter()
        .map(|names| {
            names.iter().try_fold(Sign::Plus, |acc, n| {
                signs.get(n).map(|s| acc * *s).ok_or_else(|| Error::MissingOracle(n.clone()))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Character { values })
}
