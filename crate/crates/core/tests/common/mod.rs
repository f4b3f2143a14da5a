#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thetapack::param::{parameter_parity, AParameter, Case, Duality, IrrSymbol, Side, Summand};
use thetapack::Sign;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sign(rng: &mut impl Rng) -> Sign {
    if rng.gen() {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

pub fn case(rng: &mut impl Rng) -> Case {
    *[Case::O, Case::U0, Case::U1].choose(rng).unwrap()
}

pub fn self_dual_types(case: Case) -> [Duality; 2] {
    if case.is_unitary() {
        [Duality::ConjOrthogonal, Duality::ConjSymplectic]
    } else {
        [Duality::Orthogonal, Duality::Symplectic]
    }
}

pub fn symbol(rng: &mut impl Rng, id: usize, duality: Duality) -> IrrSymbol {
    let dim = rng.gen_range(1..=2);
    IrrSymbol::new(format!("r{id}"), dim, duality).with_det("-1", sign(rng)).with_det("c", sign(rng))
}

/// Any valid parameter with at most `max_summands` distinct summands and dimension at most `max_dim`.
pub fn param(rng: &mut impl Rng, case: Case, side: Side, max_summands: usize, max_dim: u64) -> AParameter {
    loop {
        let count = rng.gen_range(0..=max_summands);
        let mut summands = Vec::new();
        while summands.len() < count {
            let types = self_dual_types(case);
            let duality = match rng.gen_range(0..5) {
                0 => Duality::None,
                k => types[k % 2],
            };
            let id = rng.gen_range(0..4);
            let rho = symbol(rng, id, duality);
            let s = Summand::new(rho, rng.gen_range(1..=4), rng.gen_range(1..=3));
            let m = rng.gen_range(1..=3);
            if duality == Duality::None {
                summands.push((s.dual_partner(), m));
            }
            summands.push((s, m));
        }
        let dim: u64 = summands.iter().map(|(s, m): &(Summand, u32)| s.dim() * *m as u64).sum();
        if dim > max_dim {
            continue;
        }
        if let Ok(p) = AParameter::new(case, side, dim, summands) {
            if p.summands().len() <= max_summands {
                return p;
            }
        }
    }
}

/// A summand of the parity of `(case, side)` built on a fresh self-dual symbol.
pub fn good_summand(rng: &mut impl Rng, case: Case, side: Side, id: usize, max_a: u32, max_b: u32) -> Summand {
    let p = parameter_parity(case, side).unwrap();
    let d = *self_dual_types(case).choose(rng).unwrap();
    let rho = symbol(rng, id, d);
    loop {
        let (a, b) = (rng.gen_range(1..=max_a), rng.gen_range(1..=max_b));
        if (a % 2 == b % 2) == (d == p) {
            return Summand::new(rho, a, b);
        }
    }
}

pub fn good_parity_param(
    rng: &mut impl Rng,
    case: Case,
    side: Side,
    max_summands: usize,
    max_dim: u64,
    max_mult: u32,
) -> AParameter {
    loop {
        let count = rng.gen_range(1..=max_summands);
        let summands: Vec<(Summand, u32)> = (0..count)
            .map(|_| {
                let id = rng.gen_range(0..3);
                (good_summand(rng, case, side, id, 5, 4), rng.gen_range(1..=max_mult))
            })
            .collect();
        let dim: u64 = summands.iter().map(|(s, m)| s.dim() * *m as u64).sum();
        if dim > max_dim {
            continue;
        }
        if let Ok(p) = AParameter::new(case, side, dim, summands) {
            return p;
        }
    }
}

/// G-side L-parameter with `witt_n() == n`: random same-parity or paired pieces, padded
/// with pairs of one-dimensional non-self-dual characters.
pub fn l_parameter(rng: &mut impl Rng, case: Case, n: u32) -> AParameter {
    let dim = match case {
        Case::O | Case::U0 => 2 * n as u64,
        Case::U1 => 2 * n as u64 - 1,
    };
    loop {
        let mut summands: Vec<(Summand, u32)> = Vec::new();
        let mut used = 0u64;
        for k in 0..rng.gen_range(0..=3) {
            let s = good_summand(rng, case, Side::G, 10 + k, 4, 1);
            if used + s.dim() <= dim {
                used += s.dim();
                summands.push((s, 1));
            }
        }
        if (dim - used) % 2 == 1 {
            summands.push((Summand::new(IrrSymbol::trivial(case), 1, 1), 1));
            used += 1;
        }
        let pairs = (dim - used) / 2;
        for k in 0..pairs {
            let chi = IrrSymbol::new(format!("chi{}", k % 2), 1, Duality::None).with_det("-1", Sign::Plus);
            let s = Summand::new(chi, 1, 1);
            summands.push((s.dual_partner(), 1));
            summands.push((s, 1));
        }
        if let Ok(p) = AParameter::new(case, Side::G, dim, summands) {
            debug_assert_eq!(p.witt_n().unwrap(), n);
            return p;
        }
    }
}

/// GL-side parameter equal to its conjugate dual.
pub fn conj_self_dual_gl(rng: &mut impl Rng, case: Case, max_dim: u64) -> AParameter {
    loop {
        let mut summands = Vec::new();
        for k in 0..rng.gen_range(1..=3) {
            let types = self_dual_types(case);
            let d = match rng.gen_range(0..4) {
                0 => Duality::None,
                j => types[j % 2],
            };
            let rho = if rng.gen_range(0..4) == 0 { IrrSymbol::trivial(case) } else { symbol(rng, k, d) };
            let s = Summand::new(rho, rng.gen_range(1..=3), rng.gen_range(1..=3));
            if d == Duality::None && s.rho.duality == Duality::None {
                summands.push((s.dual_partner(), 1));
            }
            summands.push((s, 1));
        }
        let dim: u64 = summands.iter().map(|(s, m): &(Summand, u32)| s.dim() * *m as u64).sum();
        if dim == 0 || dim > max_dim {
            continue;
        }
        if let Ok(p) = AParameter::new(case, Side::Gl, dim, summands) {
            return p;
        }
    }
}

/// Any GL-side parameter (Arthur type, no shifts).
pub fn gl_param(rng: &mut impl Rng, case: Case, max_dim: u64) -> AParameter {
    loop {
        let mut summands = Vec::new();
        for k in 0..rng.gen_range(1..=3) {
            let d = match rng.gen_range(0..3) {
                0 => Duality::None,
                j => self_dual_types(case)[j % 2],
            };
            let rho = if rng.gen_range(0..3) == 0 { IrrSymbol::trivial(case) } else { symbol(rng, k, d) };
            summands.push((Summand::new(rho, rng.gen_range(1..=5), rng.gen_range(1..=5)), rng.gen_range(1..=2)));
        }
        let dim: u64 = summands.iter().map(|(s, m): &(Summand, u32)| s.dim() * *m as u64).sum();
        if dim > max_dim {
            continue;
        }
        if let Ok(p) = AParameter::new(case, Side::Gl, dim, summands) {
            return p;
        }
    }
}
