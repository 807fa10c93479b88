//! Command-line front end. Literal grammars for vectors, group elements and
//! slopes, one subcommand per library operation, JSON (or plain) output.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::bqf::{self, Bqf, ClassListOptions};
use crate::error::Error;
use crate::group_g::{self, GElement};
use crate::lattice::{decompose_isotropic, MukaiVector, SurfaceParams};
use crate::numsol::{self, CountClass, NumericalSolution};
use crate::par::Exec;
use crate::presentation::{self, ImageKind};
use crate::quad_arith::{RootInt, SlopeValue, SqrtSign};
use crate::tame::{self, Flavor, IntervalSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(ParseError::new(self.pos, format!("expected '{tok}'")))
        }
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, "expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        Ok(self.digits()?.parse().expect("digits"))
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        let neg = self.eat("-");
        let k = self.uint()?;
        Ok(if neg { -k } else { k })
    }

    fn end(&mut self) -> Result<(), ParseError> {
        self.ws();
        if self.pos != self.src.len() {
            return Err(ParseError::new(self.pos, "unexpected trailing input"));
        }
        Ok(())
    }
}

/// `(INT, INT, ...)` with exactly `arity` entries.
fn parse_tuple(text: &str, arity: usize) -> Result<Vec<BigInt>, ParseError> {
    let mut c = Cursor::new(text);
    c.ws();
    c.expect("(")?;
    let mut out = Vec::with_capacity(arity);
    for i in 0..arity {
        if i > 0 {
            c.ws();
            c.expect(",")?;
        }
        c.ws();
        out.push(c.int()?);
    }
    c.ws();
    c.expect(")")?;
    c.end()?;
    Ok(out)
}

pub fn parse_vector(text: &str) -> Result<MukaiVector, ParseError> {
    let [r, d, a]: [BigInt; 3] = parse_tuple(text, 3)?.try_into().expect("arity 3");
    Ok(MukaiVector { r, d, a })
}

/// `(a,b,c,d,r,s)` for the element `[[a sqrt(r), b sqrt(s)], [c sqrt(s), d sqrt(r)]]`.
pub fn parse_group_element(text: &str, ctx: &SurfaceParams) -> Result<GElement, CliError> {
    let v = parse_tuple(text, 6)?;
    let small = |x: &BigInt| -> Result<u64, CliError> {
        u64::try_from(x).map_err(|_| CliError::Domain(Error::OutOfRange(format!("radicand {x}"))))
    };
    let (r, s) = (small(&v[4])?, small(&v[5])?);
    Ok(GElement::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), r, s, ctx)?)
}

pub fn parse_slope(text: &str) -> Result<SlopeValue, ParseError> {
    let mut c = Cursor::new(text);
    c.ws();
    if c.eat("inf") {
        c.end()?;
        return Ok(SlopeValue::infinity());
    }
    let k = c.int()?;
    let mut num = RootInt::from_int(k);
    if c.eat("*sqrt(") {
        let m = c.uint()?;
        c.expect(")")?;
        num = num * RootInt::sqrt(m);
    }
    let mut den = BigInt::from(1);
    if c.eat("/") {
        let at = c.pos;
        den = c.uint()?;
        if den == BigInt::from(0) {
            return Err(ParseError::new(at, "zero denominator"));
        }
    }
    c.end()?;
    Ok(SlopeValue::new(num, RootInt::from_int(den)).expect("nonzero denominator"))
}

#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    Usage(String),
    Domain(Error),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

#[derive(Parser, Debug)]
#[command(name = "mukai", version, about = "Mukai-lattice and Fourier-Mukai numerics on abelian surfaces")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Global {
    /// Half the self-intersection of the polarization, H^2 = 2n.
    #[arg(long, global = true)]
    n: Option<u64>,
    #[arg(long, global = true, default_value = "1000", value_parser = parse_uint_arg)]
    height_bound: BigInt,
    /// Inclusive range `lo:hi` of interval indices searched by classify.
    #[arg(long, global = true, default_value = "-16:16", allow_hyphen_values = true)]
    m_range: String,
    #[arg(long, global = true, conflicts_with = "plain")]
    json: bool,
    #[arg(long, global = true)]
    plain: bool,
}

fn parse_uint_arg(s: &str) -> Result<BigInt, String> {
    let v: BigInt = s.parse().map_err(|_| format!("not an integer: {s}"))?;
    if v < BigInt::from(0) {
        return Err("must be nonnegative".into());
    }
    Ok(v)
}

fn parse_int_arg(s: &str) -> Result<BigInt, String> {
    s.parse().map_err(|_| format!("not an integer: {s}"))
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Mukai pairing of two vectors.
    Pair { v: String, w: String },
    /// Write a positive primitive isotropic vector as (a^2 r, ab, b^2 s).
    Decompose { v: String },
    /// Product of two group elements.
    GMul { g: String, h: String },
    /// Right action of a group element on a vector.
    GAct { v: String, g: String },
    /// Group element with rows from two isotropic vectors.
    GFromPair { v1: String, v2: String },
    /// Image in the product of Z/2 over the primes of n.
    GPhi { g: String },
    /// Integral 3x3 matrix of the action.
    GTheta3 { g: String },
    /// Solutions of the numerical equation for v.
    Numsol {
        v: String,
        /// Report only the solution of least rank.
        #[arg(long)]
        minimal: bool,
    },
    /// Fundamental unit of the Pell-type group.
    Pell {
        #[arg(long, value_parser = parse_int_arg, allow_hyphen_values = true)]
        ell: BigInt,
    },
    /// The pair (a_m, b_m) from the m-th unit power.
    UnitPower {
        #[arg(long, value_parser = parse_int_arg, allow_hyphen_values = true)]
        ell: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// The interval I_m (or I_m* with --star).
    Intervals {
        #[arg(long, value_parser = parse_int_arg, allow_hyphen_values = true)]
        ell: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        star: bool,
    },
    /// Locate a slope among the intervals.
    Classify {
        #[arg(long, value_parser = parse_int_arg, allow_hyphen_values = true)]
        ell: BigInt,
        #[arg(allow_hyphen_values = true)]
        slope: String,
    },
    /// WIT index of a semi-homogeneous sheaf against a kernel slope.
    Wit {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(allow_hyphen_values = true)]
        mu0: String,
    },
    /// Image class of a sheaf with two presentations.
    ImageClass {
        #[arg(allow_hyphen_values = true)]
        e1: String,
        #[arg(allow_hyphen_values = true)]
        e2: String,
        #[arg(allow_hyphen_values = true)]
        f1: String,
        #[arg(allow_hyphen_values = true)]
        f2: String,
        #[arg(allow_hyphen_values = true)]
        mu: String,
    },
    /// Semi-homogeneous presentation of v.
    Present { v: String },
    /// Whether the kernel slope of vk lies outside the stability window of v.
    Bound { v: String, vk: String },
    /// Templates matched by v.
    Poincare {
        v: String,
        #[arg(long, value_parser = parse_int_arg, allow_hyphen_values = true)]
        ell: Option<BigInt>,
    },
    /// Canonical representative of a form (r, d, a) = r x^2 + 2d xy + a y^2.
    QformReduce { f: String },
    /// Classes of forms with discriminant ell.
    QformClassnum {
        #[arg(long, allow_hyphen_values = true)]
        ell: i64,
        #[arg(long)]
        primitive_only: bool,
    },
    /// Class lists for ell = 1..ell-max.
    QformTable {
        #[arg(long, allow_hyphen_values = true)]
        ell_max: i64,
        #[arg(long)]
        primitive_only: bool,
    },
    /// Diagonalizing matrix for v on a surface with n = 1.
    Birational { v: String },
}

fn int(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

fn vec_json(v: &MukaiVector) -> Value {
    json!({"r": int(&v.r), "d": int(&v.d), "a": int(&v.a)})
}

fn root_json(x: &RootInt) -> Value {
    json!({"sign": x.sign(), "radicand": int(x.radicand())})
}

fn slope_json(x: &SlopeValue) -> Value {
    json!({"num": root_json(x.num()), "den": root_json(x.den())})
}

fn g_json(g: &GElement) -> Value {
    json!({
        "a": int(g.a()), "b": int(g.b()), "c": int(g.c()), "d": int(g.d()),
        "r": g.r().to_string(), "s": g.s().to_string(), "det": g.det(),
    })
}

fn solution_json(s: &NumericalSolution) -> Value {
    json!({
        "v1": vec_json(&s.v1), "v2": vec_json(&s.v2),
        "ell1": int(&s.ell1), "ell2": int(&s.ell2), "sign": s.sign,
    })
}

fn intervals_json(spec: &IntervalSpec) -> Value {
    let pieces: Vec<Value> = spec
        .pieces
        .iter()
        .map(|p| json!({"lo": slope_json(&p.lo), "hi": slope_json(&p.hi), "lo_open": p.lo_open, "hi_open": p.hi_open}))
        .collect();
    let flavor = match spec.flavor {
        Flavor::I => "I",
        Flavor::Istar => "I*",
    };
    json!({"m": spec.m, "flavor": flavor, "pieces": pieces})
}

fn form_json(f: &Bqf) -> Value {
    json!({"r": f.r.to_string(), "d": f.d.to_string(), "a": f.a.to_string(), "polynomial": f.to_string()})
}

fn mat_json(m: &bqf::Mat2) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(int).collect())).collect())
}

fn m_range(text: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("--m-range expects LO:HI, got {text}"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn dispatch(cli: &Cli) -> Result<Value, CliError> {
    let g = &cli.global;
    let ctx = || -> Result<SurfaceParams, CliError> {
        let n = g.n.ok_or_else(|| CliError::Usage("--n is required for this command".into()))?;
        Ok(SurfaceParams::new(n)?)
    };
    let hb = &g.height_bound;
    Ok(match &cli.cmd {
        Cmd::Pair { v, w } => {
            let (v, w) = (parse_vector(v)?, parse_vector(w)?);
            json!({"pairing": int(&v.pairing(&w, &ctx()?))})
        }
        Cmd::Decompose { v } => {
            let d = decompose_isotropic(&parse_vector(v)?, &ctx()?)?;
            json!({"a": int(&d.a), "b": int(&d.b), "r": d.r.to_string(), "s": d.s.to_string()})
        }
        Cmd::GMul { g, h } => {
            let c = ctx()?;
            g_json(&group_g::g_mul(&parse_group_element(g, &c)?, &parse_group_element(h, &c)?)?)
        }
        Cmd::GAct { v, g } => {
            let c = ctx()?;
            vec_json(&group_g::g_act(&parse_vector(v)?, &parse_group_element(g, &c)?))
        }
        Cmd::GFromPair { v1, v2 } => {
            let c = ctx()?;
            g_json(&group_g::g_from_pair(&parse_vector(v1)?, &parse_vector(v2)?, &c)?)
        }
        Cmd::GPhi { g } => {
            let c = ctx()?;
            let phi = group_g::g_phi(&parse_group_element(g, &c)?, &c);
            let primes: Vec<String> = c.prime_factors().iter().map(|(p, _)| p.to_string()).collect();
            json!({"primes": primes, "phi": phi})
        }
        Cmd::GTheta3 { g } => {
            let c = ctx()?;
            let m = group_g::theta_3x3(&parse_group_element(g, &c)?);
            let rows: Vec<Value> = m.iter().map(|row| Value::Array(row.iter().map(int).collect())).collect();
            json!({"theta": rows, "det": int(&group_g::det3(&m))})
        }
        Cmd::Numsol { v, minimal } => {
            let (v, c) = (parse_vector(v)?, ctx()?);
            if *minimal {
                json!({"solution": solution_json(&numsol::minimal_rank_solution(&v, &c, hb)?)})
            } else {
                let class = match numsol::solution_count_class(&v, &c)? {
                    CountClass::AtMostOne => "at_most_one",
                    CountClass::ZeroOrInfinite => "zero_or_infinite",
                };
                let sols = numsol::solve_numerical(&v, &c, hb)?;
                json!({
                    "count_class": class,
                    "count": sols.len(),
                    "solutions": sols.iter().map(solution_json).collect::<Vec<_>>(),
                })
            }
        }
        Cmd::Pell { ell } => {
            let u = numsol::pell_fundamental(&ctx()?, ell)?;
            json!({"p": root_json(&u.p), "q": root_json(&u.q), "epsilon": u.epsilon})
        }
        Cmd::UnitPower { ell, m } => {
            let u = numsol::pell_fundamental(&ctx()?, ell)?;
            let p = numsol::unit_power(&u, *m);
            json!({"m": p.m, "a_m": root_json(&p.a_m), "b_m": root_json(&p.b_m)})
        }
        Cmd::Intervals { ell, m, star } => {
            let flavor = if *star { Flavor::Istar } else { Flavor::I };
            intervals_json(&tame::tame_intervals(&ctx()?, ell, *m, flavor)?)
        }
        Cmd::Classify { ell, slope } => {
            let lambda = parse_slope(slope)?;
            let range = m_range(&g.m_range)?;
            let t = tame::classify_slope(&lambda, &ctx()?, ell, range)?;
            let boundary = match t.boundary {
                Some(SqrtSign::Plus) => json!("+sqrt"),
                Some(SqrtSign::Minus) => json!("-sqrt"),
                _ => Value::Null,
            };
            json!({
                "m_sheaf": t.m_sheaf, "m_dual": t.m_dual,
                "boundary": boundary, "needs_wider_range": t.needs_wider_range,
            })
        }
        Cmd::Wit { lambda, mu0 } => {
            json!({"index": presentation::wit_index(&parse_slope(lambda)?, &parse_slope(mu0)?)})
        }
        Cmd::ImageClass { e1, e2, f1, f2, mu } => {
            let s = [e1, e2, f1, f2, mu].map(|x| parse_slope(x));
            let [e1, e2, f1, f2, mu] = s;
            let ic = presentation::image_class(&e1?, &e2?, &f1?, &f2?, &mu?)?;
            let kind = match ic.kind {
                ImageKind::Sheaf => "sheaf",
                ImageKind::TwoTermComplex => "two_term_complex",
            };
            json!({"kind": kind, "nonvanishing": ic.nonvanishing})
        }
        Cmd::Present { v } => {
            let p = presentation::presentation_case(&parse_vector(v)?, &ctx()?, hb)?;
            json!({
                "case": p.tag.to_string(), "description": p.tag.description(),
                "p1": root_json(&p.p1), "q1": root_json(&p.q1),
                "p2": root_json(&p.p2), "q2": root_json(&p.q2),
                "epsilon": p.epsilon, "v_e1": vec_json(&p.v1_total), "v_e2": vec_json(&p.v2),
                "dualized": p.dualized, "shift": p.shift,
            })
        }
        Cmd::Bound { v, vk } => {
            let out = presentation::stable_image_bound(&parse_vector(v)?, &ctx()?, &parse_vector(vk)?)?;
            json!({"outside": out})
        }
        Cmd::Poincare { v, ell } => {
            let (v, c) = (parse_vector(v)?, ctx()?);
            let ell = ell.clone().unwrap_or_else(|| v.ell(&c));
            let forms: Vec<String> = presentation::poincare_forms(&v, &c, &ell).iter().map(|f| f.to_string()).collect();
            json!({"ell": int(&ell), "forms": forms})
        }
        Cmd::QformReduce { f } => {
            let f = Bqf::from_vector(&parse_vector(f)?)?;
            let canon = bqf::bqf_canonical(&f)?;
            json!({"form": form_json(&f), "discriminant": f.discriminant().to_string(), "canonical": form_json(&canon)})
        }
        Cmd::QformClassnum { ell, primitive_only } => {
            let opts = ClassListOptions {
                primitive_only: *primitive_only,
                ..Default::default()
            };
            let list = bqf::bqf_class_list(*ell, opts)?;
            json!({"ell": ell.to_string(), "class_number": list.len(), "classes": list.iter().map(form_json).collect::<Vec<_>>()})
        }
        Cmd::QformTable { ell_max, primitive_only } => {
            let opts = ClassListOptions {
                primitive_only: *primitive_only,
                ..Default::default()
            };
            if *ell_max < 1 {
                return Err(Error::OutOfRange(format!("ell-max {ell_max}")).into());
            }
            let rows: Vec<Value> = bqf::bqf_table(*ell_max, opts, Exec::default())?
                .iter()
                .map(|(l, cls)| json!({"ell": l.to_string(), "classes": cls.iter().map(form_json).collect::<Vec<_>>()}))
                .collect();
            json!({"table": rows})
        }
        Cmd::Birational { v } => {
            let v = parse_vector(v)?;
            let r = bqf::birational_recipe(&v, &ctx()?, hb)?;
            json!({
                "gamma": mat_json(&r.gamma), "epsilon": r.epsilon,
                "p1": int(&r.p1), "q1": int(&r.q1), "p2": int(&r.p2), "q2": int(&r.q2),
                "v1": vec_json(&r.v1), "v2": vec_json(&r.v2),
                "dualized": r.dualized, "shift_parity": r.shift_parity,
            })
        }
    })
}

/// Inline text for a JSON value, recognizing vectors, roots, slopes and group elements.
fn plain_inline(v: &Value) -> String {
    let s = |k: &str| v.get(k).and_then(Value::as_str).unwrap_or_default().to_string();
    let root = |x: &Value| -> Option<RootInt> {
        let sign = x.get("sign")?.as_i64()?;
        let rad: BigInt = x.get("radicand")?.as_str()?.parse().ok()?;
        RootInt::new(sign as i8, rad).ok()
    };
    match v {
        Value::String(t) => t.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(plain_inline).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => {
            let keys: Vec<&str> = m.keys().map(String::as_str).collect();
            let has = |ks: &[&str]| ks.len() == keys.len() && ks.iter().all(|k| m.contains_key(*k));
            if has(&["r", "d", "a"]) {
                return format!("({},{},{})", s("r"), s("d"), s("a"));
            }
            if has(&["sign", "radicand"]) {
                if let Some(x) = root(v) {
                    return x.to_string();
                }
            }
            if has(&["num", "den"]) {
                if let (Some(n), Some(d)) = (root(&m["num"]), root(&m["den"])) {
                    if let Ok(x) = SlopeValue::new(n, d) {
                        return x.to_string();
                    }
                }
            }
            if has(&["a", "b", "c", "d", "r", "s", "det"]) {
                return format!("({},{},{},{},{},{})", s("a"), s("b"), s("c"), s("d"), s("r"), s("s"));
            }
            let parts: Vec<String> = m.iter().map(|(k, x)| format!("{k}={}", plain_inline(x))).collect();
            format!("{{{}}}", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::Object(m) if !(m.len() == 3 && m.contains_key("r")) => {
            m.iter().map(|(k, x)| format!("{k}: {}", plain_inline(x))).collect::<Vec<_>>().join("\n")
        }
        other => plain_inline(other),
    }
}

fn error_json(e: &CliError) -> Value {
    let mut m = Map::new();
    match e {
        CliError::Parse(p) => {
            m.insert("error".into(), json!("ParseError"));
            m.insert("offset".into(), json!(p.offset));
            m.insert("message".into(), json!(p.message));
        }
        CliError::Usage(msg) => {
            m.insert("error".into(), json!("Usage"));
            m.insert("message".into(), json!(msg));
        }
        CliError::Domain(err) => {
            m.insert("error".into(), json!(err.code()));
        }
    }
    Value::Object(m)
}

/// Runs the CLI on `argv` (program name first). Returns the exit code and the
/// text to print: 0 success, 1 domain error, 2 parse or usage error.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string().trim_end().to_string());
        }
    };
    let as_plain = cli.global.plain;
    let render = |v: &Value| if as_plain { plain(v) } else { v.to_string() };
    match dispatch(&cli) {
        Ok(v) => (0, render(&v)),
        Err(e) => {
            let code = match e {
                CliError::Domain(_) => 1,
                _ => 2,
            };
            (code, render(&error_json(&e)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        run(std::iter::once("mukai").chain(args.iter().copied()))
    }

    #[test]
    fn vector_literals() {
        assert_eq!(parse_vector("(1,0,-2)").unwrap(), MukaiVector::new(1, 0, -2));
        assert_eq!(parse_vector("( 2 , 1 , -2 )").unwrap(), MukaiVector::new(2, 1, -2));
        assert_eq!(parse_vector("(1,0)").unwrap_err().offset, 4);
        assert_eq!(parse_vector("(1,0,x)").unwrap_err().offset, 5);
        assert_eq!(parse_vector("(1,0,2))").unwrap_err().offset, 7);
        let big = "(123456789012345678901234567890,0,-1)";
        assert_eq!(parse_vector(big).unwrap().to_string(), big);
    }

    #[test]
    fn slope_literals() {
        let s = parse_slope("3*sqrt(2)/4").unwrap();
        assert_eq!(s, SlopeValue::new(RootInt::scaled(3, 2), RootInt::from_int(4)).unwrap());
        assert_eq!(s.to_string(), "3*sqrt(2)/4");
        assert_eq!(parse_slope("-7").unwrap(), SlopeValue::ratio(-7, 1).unwrap());
        assert!(parse_slope("inf").unwrap().is_infinite());
        assert_eq!(parse_slope("1/0").unwrap_err().offset, 2);
        assert!(parse_slope("sqrt(2)").is_err());
        assert!(parse_slope("2*sqrt(-2)").is_err());
    }

    #[test]
    fn slope_round_trip() {
        for text in ["3*sqrt(2)/4", "-7", "inf", "0", "5/3", "-2*sqrt(3)"] {
            let s = parse_slope(text).unwrap();
            assert_eq!(s.to_string(), text);
            assert_eq!(parse_slope(&s.to_string()).unwrap(), s);
        }
    }

    #[test]
    fn commands() {
        assert_eq!(run_args(&["pair", "--n", "1", "(1,0,0)", "(0,0,1)"]), (0, r#"{"pairing":"-1"}"#.into()));
        assert_eq!(
            run_args(&["present", "--n", "1", "(2,1,-2)"]),
            (1, r#"{"error":"NoSolutionWithinBound"}"#.into())
        );
        assert_eq!(run_args(&["pair", "--n", "1", "(1,0)", "(0,0,1)"]).0, 2);
        assert_eq!(run_args(&["pair", "(1,0,0)", "(0,0,1)"]).0, 2);
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["--help"]).0, 0);
        assert_eq!(run_args(&["--plain", "pair", "--n", "2", "(1,0,0)", "(0,0,1)"]), (0, "pairing: -1".into()));
    }

    #[test]
    fn negative_arguments() {
        let (code, out) = run_args(&["unit-power", "--n", "1", "--ell", "2", "--m", "-2"]);
        assert_eq!(code, 0, "{out}");
        let (code, out) = run_args(&["classify", "--n", "1", "--ell", "2", "-7/3", "--m-range", "-4:4"]);
        assert_eq!(code, 0, "{out}");
    }
}
