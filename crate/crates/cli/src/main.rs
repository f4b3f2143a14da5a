use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use thetapack::dsl::{parse_parameter_bytes, print_parameter, Diagnostic};
use thetapack::global::{multiplicity_test, validate_global, GlobalPacketMember, GlobalParameter, PlaceData};
use thetapack::group::{classify, component_group, enumerate_characters, Character, DEFAULT_MAX_ENUM};
use thetapack::labels::{contragredient_twist, induct_packet, whittaker_twist};
use thetapack::ledger::{
    alpha_symbol, beta, evaluate_beta_at_zero, expected_theta_l_parameter, l_factor_expansion, simplify,
    stripe_bound, sym,
};
use thetapack::moeglin::{
    default_admissible_order, descent_segment, dominate, enumerate_supercuspidals, is_natural_order,
    jacquet_schedule, validate_admissible_order, AdmissibleOrder, DEFAULT_SEARCH_CAP,
};
use thetapack::packet::LabeledPacket;
use thetapack::param::{AParameter, Case, IrrSymbol, Side, Summand};
use thetapack::theta::{pull_back_packet, theta_parameter_with, TwistPair};
use thetapack::Sign;

const MAX_ENUM_VAR: &str = "THETA_PACKET_MAX_ENUM";

#[derive(Parser)]
#[command(name = "thetapack", version, about = "Exact calculator for A-parameters, component groups and theta-lift packet labels")]
struct Cli {
    /// Emit JSON with sorted keys on a single line.
    #[arg(long, global = true)]
    canonical: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// DSL or JSON file; `-` reads stdin.
    input: String,
}

#[derive(Args)]
struct OrderArgs {
    /// Comma-separated ranks, one per summand of the expanded index set.
    #[arg(long)]
    order: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
    cap: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Good parity, DDR and elementary flags.
    Classify(Input),
    /// Basis and z of the component group.
    Compgroup {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        quotient: bool,
    },
    /// All characters of the component group.
    Characters {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        quotient: bool,
    },
    /// Theta-lifted parameter on the larger group.
    Theta {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: u32,
        /// Index of the splitting characters (χ_V, χ_W) to use.
        #[arg(long, default_value_t = 0)]
        variant: u8,
    },
    /// Pull an H-side packet back to G.
    Pullback {
        /// H-side packet JSON, or an H-side parameter (all characters).
        #[command(flatten)]
        input: Input,
        /// G-side parameter.
        #[arg(long)]
        psi: String,
        #[arg(long)]
        r: u32,
    },
    /// Supercuspidal characters of a discrete L-parameter.
    Supercuspidals(Input),
    /// Check an order for admissibility and naturality.
    OrderCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        order: String,
    },
    /// Dominating DDR parameter for an admissible order.
    Dominate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Partial Jacquet schedule from the dominating parameter.
    Schedule {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Exponents of the Witt-tower descent segment.
    Descend {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        r0: u32,
    },
    /// Expansion of L(s, τ) for a GL-side parameter.
    Lfactors(Input),
    /// Pole stripe half-width of L(s, τ).
    Stripe(Input),
    /// β(0) as a sign word, optionally evaluated at ω_τ(-1).
    Beta0 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        omega: Option<Sign>,
        #[arg(long, default_value = "O")]
        case: Case,
        /// GL-side parameter for τ; defaults to the trivial character.
        #[arg(long)]
        tau: Option<String>,
    },
    /// The comparison constant α as a sign word.
    Alpha {
        #[arg(long)]
        case: Case,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        /// Substitute the Whittaker identities for γ_V and γ_W and reduce.
        #[arg(long)]
        substitute: bool,
        /// JSON table of sign values by symbol name.
        #[arg(long)]
        oracle: Option<String>,
    },
    /// Relabel for a translated Whittaker datum.
    Wtwist {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        c: String,
        #[arg(long)]
        oracle: Option<String>,
    },
    /// Contragredient packet.
    Dual {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        oracle: Option<String>,
    },
    /// Extend labels along parabolic induction from τ.
    Induct {
        #[command(flatten)]
        input: Input,
        /// GL-side parameter for τ.
        #[arg(long)]
        tau: String,
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        epsilon: Sign,
        /// Defaults to dim τ.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Check the conditions on a global parameter.
    GlobalValidate(Input),
    /// Multiplicity-formula membership test.
    GlobalTest {
        /// Global parameter JSON.
        #[command(flatten)]
        input: Input,
        /// Place data JSON.
        #[arg(long)]
        places: String,
        /// Global packet member JSON.
        #[arg(long)]
        member: String,
        /// ε_ψ as comma-separated signs, one per global summand.
        #[arg(long, allow_hyphen_values = true)]
        epsilon: String,
    },
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s.trim() {
        "+1" | "1" | "+" => Ok(Sign::Plus),
        "-1" | "-" => Ok(Sign::Minus),
        other => Err(format!("expected +1 or -1, got `{other}`")),
    }
}

enum Failure {
    Parse(String),
    Domain(thetapack::Error),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Parse(m) => f.write_str(m),
            Failure::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<thetapack::Error> for Failure {
    fn from(e: thetapack::Error) -> Failure {
        Failure::Domain(e)
    }
}

type Outcome = Result<Value, Failure>;

fn read_source(path: &str) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    if path == "-" {
        std::io::stdin().read_to_end(&mut buf).map_err(|e| Failure::Parse(format!("stdin: {e}")))?;
    } else {
        buf = std::fs::read(path).map_err(|e| Failure::Parse(format!("{path}: {e}")))?;
    }
    Ok(buf)
}

fn is_json(bytes: &[u8]) -> bool {
    bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'{')
}

fn json<T: serde::de::DeserializeOwned>(path: &str, bytes: &[u8]) -> Result<T, Failure> {
    serde_json::from_slice(bytes).map_err(|e| Failure::Parse(format!("{path}: {e}")))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, Failure> {
    json(path, &read_source(path)?)
}

fn diagnostics(path: &str, diags: &[Diagnostic]) -> Failure {
    let lines: Vec<String> = diags
        .iter()
        .map(|d| {
            let mut s = format!("{path}:{d}");
            if !d.expected.is_empty() {
                s.push_str(&format!(" (expected {})", d.expected.join(", ")));
            }
            s
        })
        .collect();
    Failure::Parse(lines.join("\n"))
}

fn read_parameter(path: &str) -> Result<AParameter, Failure> {
    let bytes = read_source(path)?;
    if is_json(&bytes) {
        json(path, &bytes)
    } else {
        parse_parameter_bytes(&bytes).map_err(|d| diagnostics(path, &d))
    }
}

/// A packet as JSON, or every character of a parameter's component group.
fn read_packet(path: &str) -> Result<LabeledPacket, Failure> {
    let bytes = read_source(path)?;
    if is_json(&bytes) {
        let v: Value = json(path, &bytes)?;
        if v.get("members").is_some() {
            return serde_json::from_value(v).map_err(|e| Failure::Parse(format!("{path}: {e}")));
        }
        let p: AParameter = serde_json::from_value(v).map_err(|e| Failure::Parse(format!("{path}: {e}")))?;
        return Ok(LabeledPacket::all_characters(p.clone(), p.side() == Side::H, max_enum())?);
    }
    let p = parse_parameter_bytes(&bytes).map_err(|d| diagnostics(path, &d))?;
    Ok(LabeledPacket::all_characters(p.clone(), p.side() == Side::H, max_enum())?)
}

fn read_oracle(path: &Option<String>) -> Result<BTreeMap<String, Sign>, Failure> {
    match path {
        Some(p) => read_json(p),
        None => Ok(BTreeMap::new()),
    }
}

fn max_enum() -> usize {
    std::env::var(MAX_ENUM_VAR).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_ENUM)
}

fn parse_order(psi: &AParameter, spec: &Option<String>) -> Result<AdmissibleOrder, Failure> {
    match spec {
        None => Ok(default_admissible_order(psi)),
        Some(s) => s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<u32>().map_err(|e| Failure::Parse(format!("order entry `{t}`: {e}"))))
            .collect::<Result<Vec<_>, _>>()
            .map(|ranks| AdmissibleOrder { ranks }),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize to JSON")
}

fn parameter_value(p: &AParameter) -> Value {
    json!({ "parameter": to_value(p), "text": print_parameter(p) })
}

fn trivial_tau(case: Case) -> AParameter {
    AParameter::new(case, Side::Gl, 1, vec![(Summand::new(IrrSymbol::trivial(case), 1, 1), 1)])
        .expect("the trivial character is a valid GL parameter")
}

/// The L-parameter `n·(1 + 1)` of the right dimension, with one extra `1` in Case U1.
fn default_phi(case: Case, n: u32) -> Result<AParameter, Failure> {
    let dim = match case {
        Case::O | Case::U0 => 2 * n as u64,
        Case::U1 => (2 * n as u64).saturating_sub(1),
    };
    if case == Case::U0 && n > 0 {
        let chi = IrrSymbol::new("chi", 1, thetapack::param::Duality::None);
        let s = Summand::new(chi, 1, 1);
        return Ok(AParameter::new(case, Side::G, dim, vec![(s.dual_partner(), n), (s, n)])?);
    }
    let summands =
        if dim == 0 { vec![] } else { vec![(Summand::new(IrrSymbol::trivial(case), 1, 1), dim as u32)] };
    Ok(AParameter::new(case, Side::G, dim, summands)?)
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Classify(i) => Ok(to_value(&classify(&read_parameter(&i.input)?))),
        Command::Compgroup { input, quotient } => {
            let g = component_group(&read_parameter(&input.input)?, quotient);
            let mut v = to_value(&g);
            v["rank"] = json!(g.rank());
            v["dual_order"] = json!(g.dual_order().to_string());
            Ok(v)
        }
        Command::Characters { input, quotient } => {
            let g = component_group(&read_parameter(&input.input)?, quotient);
            Ok(to_value(&enumerate_characters(&g, max_enum())?))
        }
        Command::Theta { input, r, variant } => {
            let psi = read_parameter(&input.input)?;
            Ok(parameter_value(&theta_parameter_with(&psi, r, TwistPair::variant(variant))?))
        }
        Command::Pullback { input, psi, r } => {
            let h = read_packet(&input.input)?;
            let psi = read_parameter(&psi)?;
            Ok(to_value(&pull_back_packet(&h, &psi, r)?))
        }
        Command::Supercuspidals(i) => {
            Ok(to_value(&enumerate_supercuspidals(&read_parameter(&i.input)?, max_enum())?))
        }
        Command::OrderCheck { input, order } => {
            let psi = read_parameter(&input.input)?;
            let order = parse_order(&psi, &Some(order))?;
            let admissible = validate_admissible_order(&psi, &order)?;
            let natural = is_natural_order(&psi, &order)?;
            Ok(json!({ "admissible": admissible, "natural": natural }))
        }
        Command::Dominate { input, order } => {
            let psi = read_parameter(&input.input)?;
            let ord = parse_order(&psi, &order.order)?;
            let d = dominate(&psi, &ord, order.cap)?;
            let mut v = to_value(&d);
            v["text"] = json!(print_parameter(&d.psi_gg));
            Ok(v)
        }
        Command::Schedule { input, order } => {
            let psi = read_parameter(&input.input)?;
            let ord = parse_order(&psi, &order.order)?;
            let d = dominate(&psi, &ord, order.cap)?;
            Ok(to_value(&jacquet_schedule(&psi, &ord, &d)?))
        }
        Command::Descend { n, r, r0 } => Ok(json!({ "exponents": descent_segment(n, r, r0)? })),
        Command::Lfactors(i) => {
            let l = l_factor_expansion(&read_parameter(&i.input)?);
            Ok(json!({ "atoms": to_value(&l), "text": l.to_string() }))
        }
        Command::Stripe(i) => {
            let tau = read_parameter(&i.input)?;
            let n = stripe_bound(&tau)?;
            Ok(json!({ "n": n.to_string(), "n_x2": n.doubled(), "k": tau.target_dim() }))
        }
        Command::Beta0 { n, r, omega, case, tau } => {
            let tau = match tau {
                Some(p) => read_parameter(&p)?,
                None => trivial_tau(case),
            };
            let phi = default_phi(case, n)?;
            let th = expected_theta_l_parameter(&phi, n, r, TwistPair::default())?;
            let word = evaluate_beta_at_zero(&beta(&tau, &phi, &th, n, r)?)?;
            match omega {
                Some(w) => {
                    let oracle = BTreeMap::from([(sym::OMEGA_M1.to_string(), w)]);
                    Ok(json!({ "value": word.evaluate(&oracle)?.to_string() }))
                }
                None => Ok(json!({ "word": to_value(&word), "text": word.to_string() })),
            }
        }
        Command::Alpha { case, k, n, r, substitute, oracle } => {
            let mut word = alpha_symbol(case, k, n, r)?;
            if substitute {
                word = simplify(&word, case);
            }
            let mut v = json!({ "word": to_value(&word), "text": word.to_string() });
            if oracle.is_some() {
                v["value"] = json!(word.evaluate(&read_oracle(&oracle)?)?.to_string());
            }
            Ok(v)
        }
        Command::Wtwist { input, c, oracle } => {
            let p = read_packet(&input.input)?;
            Ok(to_value(&whittaker_twist(&p, &c, &read_oracle(&oracle)?)?))
        }
        Command::Dual { input, oracle } => {
            let p = read_packet(&input.input)?;
            Ok(to_value(&contragredient_twist(&p, &read_oracle(&oracle)?)?))
        }
        Command::Induct { input, tau, epsilon, k } => {
            let p = read_packet(&input.input)?;
            let tau = read_parameter(&tau)?;
            let k = k.unwrap_or(tau.target_dim());
            Ok(to_value(&induct_packet(&p, &tau, epsilon, k)?))
        }
        Command::GlobalValidate(i) => {
            let gp: GlobalParameter = read_json(&i.input)?;
            let violations = validate_global(&gp);
            Ok(json!({ "valid": violations.is_empty(), "violations": to_value(&violations) }))
        }
        Command::GlobalTest { input, places, member, epsilon } => {
            let gp: GlobalParameter = read_json(&input.input)?;
            let data: PlaceData = read_json(&places)?;
            let member: GlobalPacketMember = read_json(&member)?;
            let values = epsilon
                .split(',')
                .map(|t| parse_sign(t).map_err(Failure::Parse))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(to_value(&multiplicity_test(&gp, &data, &member, &Character { values })?))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(v) => {
            let text = if cli.canonical {
                serde_json::to_string(&v)
            } else {
                serde_json::to_string_pretty(&v)
            };
            println!("{}", text.expect("values serialize"));
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {f}");
            match f {
                Failure::Parse(_) => ExitCode::from(2),
                Failure::Domain(_) => ExitCode::from(1),
            }
        }
    }
}
