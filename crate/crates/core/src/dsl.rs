//! Text format for parameters.
//!
//! ```text
//! param := "case" CASE "side" SIDE "dim" INT ":" [term ("+" term)*]
//! term  := [INT "*"] NAME "[" INT "," DUALITY ("," flag)* "]" ["*" "shift(" HALF ")"]
//!          "*" "S(" INT ")" "*" "S(" INT ")"
//! flag  := "triv" | "dual" | TWISTGEN ["^" SIGNED] | "det(" KEY ")" "=" SIGNED
//! ```
//!
//! Whitespace is insignificant. Every failure is reported as a [`Diagnostic`]
//! carrying the offending span and the set of tokens that would have been accepted.

use std::fmt;

use serde::Serialize;

use crate::arith::{HalfInt, Sign};
use crate::param::{AParameter, Case, Duality, IrrSymbol, Side, Summand, TwistWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub begin: usize,
    pub end: usize,
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub message: String,
    pub span: SourceSpan,
    pub expected: Vec<String>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.span.line, self.span.col, self.message)
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Punct(char),
    Eof,
    Bad(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("integer `{s}`"),
            Tok::Punct(c) | Tok::Bad(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = std::result::Result<T, Diagnostic>;

impl<'a> Parser<'a> {
    fn span(&self, begin: usize, end: usize) -> SourceSpan {
        span_at(self.src, begin, end)
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
    }

    /// Next token and its byte range, without consuming it.
    fn peek(&mut self) -> (Tok, usize, usize) {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return (Tok::Eof, start, start);
        };
        if c.is_ascii_alphabetic() || c == '_' {
            let len = rest.find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_')).unwrap_or(rest.len());
            return (Tok::Ident(rest[..len].to_string()), start, start + len);
        }
        if c.is_ascii_digit() {
            let len = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
            return (Tok::Int(rest[..len].to_string()), start, start + len);
        }
        if "[]()*+,:^=-/".contains(c) {
            return (Tok::Punct(c), start, start + 1);
        }
        (Tok::Bad(c), start, start + c.len_utf8())
    }

    fn bump(&mut self) -> (Tok, usize, usize) {
        let t = self.peek();
        self.pos = t.2;
        t
    }

    fn fail(&self, found: &Tok, begin: usize, end: usize, expected: &[&str]) -> Diagnostic {
        let exp: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
        let message = match expected {
            [one] => format!("expected {one}, found {}", found.describe()),
            _ => format!("expected one of {}, found {}", exp.join(", "), found.describe()),
        };
        Diagnostic { message, span: self.span(begin, end), expected: exp }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        let (t, b, e) = self.bump();
        match &t {
            Tok::Ident(s) if s == kw => Ok(()),
            _ => Err(self.fail(&t, b, e, &[&format!("'{kw}'")])),
        }
    }

    fn punct(&mut self, c: char) -> PResult<(usize, usize)> {
        let (t, b, e) = self.bump();
        if t == Tok::Punct(c) {
            Ok((b, e))
        } else {
            Err(self.fail(&t, b, e, &[&format!("'{c}'")]))
        }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if self.peek().0 == Tok::Punct(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn uint<T: TryFrom<u64>>(&mut self) -> PResult<(T, usize, usize)> {
        let (t, b, e) = self.bump();
        match &t {
            Tok::Int(s) => {
                let v = s
                    .parse::<u64>()
                    .ok()
                    .and_then(|v| T::try_from(v).ok())
                    .ok_or_else(|| Diagnostic {
                        message: format!("integer `{s}` is out of range"),
                        span: self.span(b, e),
                        expected: vec![],
                    })?;
                Ok((v, b, e))
            }
            _ => Err(self.fail(&t, b, e, &["integer"])),
        }
    }

    fn positive<T: TryFrom<u64> + PartialEq + Default>(&mut self, what: &str) -> PResult<T> {
        let (v, b, e) = self.uint::<T>()?;
        if v == T::default() {
            return Err(Diagnostic {
                message: format!("{what} must be positive"),
                span: self.span(b, e),
                expected: vec![],
            });
        }
        Ok(v)
    }

    fn signed_int(&mut self) -> PResult<(i64, usize)> {
        let (_, start, _) = self.peek();
        let neg = if self.eat_punct('-') {
            true
        } else {
            self.eat_punct('+');
            false
        };
        let (v, _, _) = self.uint::<i64>()?;
        Ok((if neg { -v } else { v }, start))
    }

    fn sign_value(&mut self) -> PResult<Sign> {
        let (v, start) = self.signed_int()?;
        Sign::from_i64(v).ok_or_else(|| Diagnostic {
            message: format!("expected +1 or -1, found {v}"),
            span: self.span(start, self.pos),
            expected: vec!["'+1'".into(), "'-1'".into()],
        })
    }

    fn half(&mut self) -> PResult<HalfInt> {
        let (num, start) = self.signed_int()?;
        if self.eat_punct('/') {
            let (den, b, e) = self.uint::<i64>()?;
            if den != 2 {
                return Err(Diagnostic {
                    message: "shift denominators must be 2".into(),
                    span: self.span(b, e),
                    expected: vec!["'2'".into()],
                });
            }
            return Ok(HalfInt::from_doubled(num));
        }
        num.checked_mul(2).map(HalfInt::from_doubled).ok_or_else(|| Diagnostic {
            message: "shift out of range".into(),
            span: self.span(start, self.pos),
            expected: vec![],
        })
    }

    fn ident_of<T>(&mut self, what: &str, options: &[&str], f: impl Fn(&str) -> Option<T>) -> PResult<T> {
        let (t, b, e) = self.bump();
        if let Tok::Ident(s) = &t {
            if let Some(v) = f(s) {
                return Ok(v);
            }
        }
        let exp: Vec<String> = options.iter().map(|o| format!("'{o}'")).collect();
        let exp_ref: Vec<&str> = exp.iter().map(|s| s.as_str()).collect();
        let mut d = self.fail(&t, b, e, &exp_ref);
        d.message = format!("{} ({what})", d.message);
        Err(d)
    }

    fn parameter(&mut self) -> PResult<(Case, Side, u64, Vec<(Summand, u32)>)> {
        self.keyword("case")?;
        let case = self.ident_of("case", &["O", "U0", "U1"], |s| s.parse().ok())?;
        self.keyword("side")?;
        let side = self.ident_of("side", &["G", "H", "GL"], |s| s.parse().ok())?;
        self.keyword("dim")?;
        let (dim, _, _) = self.uint::<u64>()?;
        self.punct(':')?;
        let mut summands = Vec::new();
        if self.peek().0 != Tok::Eof {
            loop {
                summands.push(self.term()?);
                let (t, b, e) = self.peek();
                match t {
                    Tok::Eof => break,
                    Tok::Punct('+') => {
                        self.bump();
                    }
                    _ => return Err(self.fail(&t, b, e, &["'+'", "end of input"])),
                }
            }
        }
        Ok((case, side, dim, summands))
    }

    fn term(&mut self) -> PResult<(Summand, u32)> {
        let mut mult = 1u32;
        if let (Tok::Int(_), _, _) = self.peek() {
            mult = self.positive("multiplicity")?;
            self.punct('*')?;
        }
        let (t, b, e) = self.bump();
        let id = match t {
            Tok::Ident(s) => s,
            other => return Err(self.fail(&other, b, e, &["symbol name", "integer"])),
        };
        self.punct('[')?;
        let dim: u32 = self.positive("symbol dimension")?;
        self.punct(',')?;
        let duality = self.ident_of("duality", &["orth", "symp", "corth", "csymp", "none"], Duality::from_keyword)?;
        let mut rho = IrrSymbol::new(id, dim, duality);
        while self.eat_punct(',') {
            self.flag(&mut rho)?;
        }
        self.punct(']')?;
        let mut shift = HalfInt::ZERO;
        self.punct('*')?;
        let (t, b, e) = self.bump();
        match &t {
            Tok::Ident(s) if s == "shift" => {
                self.punct('(')?;
                shift = self.half()?;
                self.punct(')')?;
                self.punct('*')?;
                self.keyword("S")?;
            }
            Tok::Ident(s) if s == "S" => {}
            _ => return Err(self.fail(&t, b, e, &["'S'", "'shift'"])),
        }
        self.punct('(')?;
        let a: u32 = self.positive("SL2 dimension")?;
        self.punct(')')?;
        self.punct('*')?;
        self.keyword("S")?;
        self.punct('(')?;
        let bb: u32 = self.positive("SL2 dimension")?;
        self.punct(')')?;
        Ok((Summand { rho, a, b: bb, half_shift: shift }, mult))
    }

    fn flag(&mut self, rho: &mut IrrSymbol) -> PResult<()> {
        let (t, b, e) = self.bump();
        let name = match &t {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.fail(&t, b, e, &["'triv'", "'dual'", "'det'", "twist generator"])),
        };
        match name.as_str() {
            "triv" => rho.contains_trivial = true,
            "dual" => rho.dual = true,
            "det" => {
                self.punct('(')?;
                self.skip_ws();
                let rest = &self.src[self.pos..];
                let len = rest
                    .find(|c: char| !(c.is_ascii_alphanumeric() || "_-'/.".contains(c)))
                    .unwrap_or(rest.len());
                if len == 0 {
                    let (t, b, e) = self.peek();
                    return Err(self.fail(&t, b, e, &["field element name"]));
                }
                let key = rest[..len].to_string();
                self.pos += len;
                self.punct(')')?;
                self.punct('=')?;
                let v = self.sign_value()?;
                rho.det_at.insert(key, v);
            }
            _ => {
                let g = name
                    .parse()
                    .map_err(|_| self.fail(&t, b, e, &["'triv'", "'dual'", "'det'", "twist generator"]))?;
                let exp = if self.eat_punct('^') {
                    let (v, start) = self.signed_int()?;
                    i32::try_from(v).map_err(|_| Diagnostic {
                        message: "twist exponent out of range".into(),
                        span: self.span(start, self.pos),
                        expected: vec![],
                    })?
                } else {
                    1
                };
                let mut w = std::mem::take(&mut rho.twist);
                w.push(g, exp);
                rho.twist = w;
            }
        }
        Ok(())
    }
}

fn span_at(src: &str, begin: usize, end: usize) -> SourceSpan {
    let before = &src[..begin];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map(|i| i + 1).unwrap_or(0);
    let col = src[line_start..begin].chars().count() + 1;
    SourceSpan { begin, end, line, col }
}

pub fn parse_parameter(text: &str) -> std::result::Result<AParameter, Vec<Diagnostic>> {
    let mut p = Parser { src: text, pos: 0 };
    let (case, side, dim, summands) = p.parameter().map_err(|d| vec![d])?;
    AParameter::new(case, side, dim, summands).map_err(|e| {
        let msg = e.to_string();
        let msg = msg.strip_prefix("invalid parameter: ").unwrap_or(&msg).to_string();
        vec![Diagnostic { message: msg, span: span_at(text, 0, text.len()), expected: vec![] }]
    })
}

/// Byte-level entry point; invalid UTF-8 is reported at the first bad byte.
pub fn parse_parameter_bytes(bytes: &[u8]) -> std::result::Result<AParameter, Vec<Diagnostic>> {
    match std::str::from_utf8(bytes) {
        Ok(s) => parse_parameter(s),
        Err(e) => {
            let ok = e.valid_up_to();
            let prefix = std::str::from_utf8(&bytes[..ok]).expect("valid prefix");
            let mut span = span_at(prefix, ok, ok);
            span.end = ok + e.error_len().unwrap_or(bytes.len() - ok);
            Err(vec![Diagnostic { message: "input is not valid UTF-8".into(), span, expected: vec![] }])
        }
    }
}

fn print_symbol(rho: &IrrSymbol) -> String {
    let mut parts = vec![rho.dim.to_string(), rho.duality.keyword().to_string()];
    if rho.contains_trivial {
        parts.push("triv".into());
    }
    if rho.dual {
        parts.push("dual".into());
    }
    parts.extend(rho.twist.factors());
    for (k, v) in &rho.det_at {
        parts.push(format!("det({k})={v}"));
    }
    format!("{}[{}]", rho.id, parts.join(","))
}

pub fn print_summand(s: &Summand, mult: u32) -> String {
    let mut out = String::new();
    if mult != 1 {
        out.push_str(&format!("{mult} * "));
    }
    out.push_str(&print_symbol(&s.rho));
    if s.half_shift != HalfInt::ZERO {
        out.push_str(&format!(" * shift({})", s.half_shift));
    }
    out.push_str(&format!(" * S({}) * S({})", s.a, s.b));
    out
}

pub fn print_parameter(p: &AParameter) -> String {
    let head = format!("case {} side {} dim {}:", p.case(), p.side(), p.target_dim());
    if p.is_empty() {
        return head;
    }
    let terms: Vec<String> = p.summands().iter().map(|(s, m)| print_summand(s, *m)).collect();
    format!("{head} {}", terms.join(" + "))
}

/// Twist words in DSL flag syntax, e.g. `xV,xW^-1`.
pub fn print_twist(w: &TwistWord) -> String {
    w.factors().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_three_summands() {
        let p = parse_parameter(
            "case O side G dim 4: rho1[1,orth] * S(1) * S(1) + rho2[1,orth] * S(1) * S(1) + rho3[2,symp] * S(1) * S(1)",
        )
        .unwrap();
        assert_eq!(p.summands().len(), 3);
        assert_eq!(p.target_dim(), 4);
    }

    #[test]
    fn empty_input() {
        let d = parse_parameter("").unwrap_err();
        assert_eq!(d[0].span.line, 1);
        assert_eq!(d[0].span.col, 1);
        assert!(d[0].message.contains("expected 'case'"));
        assert_eq!(d[0].expected, vec!["'case'".to_string()]);
    }

    #[test]
    fn semantic_dim_error() {
        let d = parse_parameter("case O side G dim 3: r[1,orth] * S(3) * S(1)").unwrap_err();
        assert!(d[0].message.contains("target_dim must be even"));
    }

    #[test]
    fn empty_parameter_prints() {
        let p = parse_parameter("case O side G dim 0:").unwrap();
        assert_eq!(print_parameter(&p), "case O side G dim 0:");
    }

    #[test]
    fn flags_roundtrip() {
        let text = "case U1 side H dim 4: 2 * trivial[1,corth,triv,xV,xW1^-2,det(-1)=+1] * S(1) * S(1) + \
                    r[1,none,dual] * shift(1/2) * S(1) * S(1) + r[1,none] * shift(-1/2) * S(1) * S(1)";
        let p = parse_parameter(text).unwrap();
        let printed = print_parameter(&p);
        assert_eq!(parse_parameter(&printed).unwrap(), p);
        assert_eq!(print_parameter(&parse_parameter(&printed).unwrap()), printed);
    }

    #[test]
    fn order_is_normalized() {
        let a = parse_parameter("case O side G dim 2: b[1,orth] * S(1) * S(1) + a[1,orth] * S(1) * S(1)").unwrap();
        let b = parse_parameter("case O side G dim 2: a[1,orth]*S(1)*S(1)+b[1,orth]*S(1)*S(1)").unwrap();
        assert_eq!(print_parameter(&a), print_parameter(&b));
    }

    #[test]
    fn error_positions_and_expectations() {
        let d = parse_parameter("case O side G dim 2:\n  a[1,orth] * S(1) S(1)").unwrap_err();
        assert_eq!((d[0].span.line, d[0].span.col), (2, 20));
        assert_eq!(d[0].expected, vec!["'*'".to_string()]);

        let d = parse_parameter("case Q").unwrap_err();
        assert_eq!(d[0].expected.len(), 3);

        let d = parse_parameter("case O side G dim 99999999999999999999:").unwrap_err();
        assert!(d[0].message.contains("out of range"));
    }

    #[test]
    fn invalid_utf8() {
        let d = parse_parameter_bytes(b"case \xff").unwrap_err();
        assert_eq!(d[0].span.begin, 5);
    }
}
