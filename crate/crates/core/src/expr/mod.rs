//! Expressions in the curve parameter `t`.
//!
//! The AST is small on purpose: literals, `pi`, `e`, `t`, the four
//! arithmetic operators, powers, and seven elementary functions. Derivatives
//! are exact and built with the simplifying constructors below, which fold
//! numeric constants and drop `0`/`1` identities but do nothing else.

mod diff;
mod parse;

use std::fmt;

pub(crate) use parse::{parse_expr_at, Cursor};
pub use parse::parse_expr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sqrt,
    Exp,
    Log,
    Abs,
}

impl Func {
    pub const ALL: [Func; 7] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sqrt,
        Func::Exp,
        Func::Log,
        Func::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sqrt => "sqrt",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    fn apply(self, x: f64) -> Result<f64, String> {
        match self {
            Func::Sin => Ok(x.sin()),
            Func::Cos => Ok(x.cos()),
            Func::Tan => Ok(x.tan()),
            Func::Sqrt if x < 0.0 => Err(format!("sqrt of negative value {x}")),
            Func::Sqrt => Ok(x.sqrt()),
            Func::Exp => Ok(x.exp()),
            Func::Log if x <= 0.0 => Err(format!("log of non-positive value {x}")),
            Func::Log => Ok(x.ln()),
            Func::Abs => Ok(x.abs()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    Pi,
    E,
    T,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

/// Failure while evaluating an expression at a parameter value.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalError(pub String);

impl Expr {
    pub fn num(v: f64) -> Expr {
        Expr::Num(v)
    }

    fn as_num(&self) -> Option<f64> {
        match *self {
            Expr::Num(v) => Some(v),
            _ => None,
        }
    }

    /// Whether the expression is free of `t`.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Num(_) | Expr::Pi | Expr::E => true,
            Expr::T => false,
            Expr::Neg(a) | Expr::Call(_, a) => a.is_constant(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b) => a.is_constant() && b.is_constant(),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Expr::Num(_) | Expr::Pi | Expr::E | Expr::T => 1,
            Expr::Neg(a) | Expr::Call(_, a) => 1 + a.size(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64, EvalError> {
        let v = self.eval_raw(t).map_err(EvalError)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError(format!("non-finite result {v}")))
        }
    }

    fn eval_raw(&self, t: f64) -> Result<f64, String> {
        let v = match self {
            Expr::Num(v) => *v,
            Expr::Pi => std::f64::consts::PI,
            Expr::E => std::f64::consts::E,
            Expr::T => t,
            Expr::Neg(a) => -a.eval_raw(t)?,
            Expr::Add(a, b) => a.eval_raw(t)? + b.eval_raw(t)?,
            Expr::Sub(a, b) => a.eval_raw(t)? - b.eval_raw(t)?,
            Expr::Mul(a, b) => a.eval_raw(t)? * b.eval_raw(t)?,
            Expr::Div(a, b) => {
                let (n, d) = (a.eval_raw(t)?, b.eval_raw(t)?);
                if d == 0.0 {
                    return Err("division by zero".into());
                }
                n / d
            }
            Expr::Pow(a, b) => pow(a.eval_raw(t)?, b.eval_raw(t)?)?,
            Expr::Call(f, a) => f.apply(a.eval_raw(t)?)?,
        };
        if v.is_nan() {
            return Err("undefined value".into());
        }
        Ok(v)
    }

    /// Exact derivative with respect to `t`.
    pub fn differentiate(&self) -> Expr {
        diff::derivative(self)
    }

    /// Rebuild the tree with the simplifying constructors.
    pub fn simplify(&self) -> Expr {
        match self {
            Expr::Num(_) | Expr::Pi | Expr::E | Expr::T => self.clone(),
            Expr::Neg(a) => neg(a.simplify()),
            Expr::Add(a, b) => add(a.simplify(), b.simplify()),
            Expr::Sub(a, b) => sub(a.simplify(), b.simplify()),
            Expr::Mul(a, b) => mul(a.simplify(), b.simplify()),
            Expr::Div(a, b) => div(a.simplify(), b.simplify()),
            Expr::Pow(a, b) => pow_expr(a.simplify(), b.simplify()),
            Expr::Call(f, a) => call(*f, a.simplify()),
        }
    }

    /// Replace every `t` by `sub`.
    pub fn substitute(&self, sub_t: &Expr) -> Expr {
        match self {
            Expr::T => sub_t.clone(),
            Expr::Num(_) | Expr::Pi | Expr::E => self.clone(),
            Expr::Neg(a) => Expr::Neg(Box::new(a.substitute(sub_t))),
            Expr::Add(a, b) => Expr::Add(Box::new(a.substitute(sub_t)), Box::new(b.substitute(sub_t))),
            Expr::Sub(a, b) => Expr::Sub(Box::new(a.substitute(sub_t)), Box::new(b.substitute(sub_t))),
            Expr::Mul(a, b) => Expr::Mul(Box::new(a.substitute(sub_t)), Box::new(b.substitute(sub_t))),
            Expr::Div(a, b) => Expr::Div(Box::new(a.substitute(sub_t)), Box::new(b.substitute(sub_t))),
            Expr::Pow(a, b) => Expr::Pow(Box::new(a.substitute(sub_t)), Box::new(b.substitute(sub_t))),
            Expr::Call(f, a) => Expr::Call(*f, Box::new(a.substitute(sub_t))),
        }
    }
}

fn pow(base: f64, exp: f64) -> Result<f64, String> {
    if exp.fract() == 0.0 && exp.abs() <= i32::MAX as f64 {
        if base == 0.0 && exp < 0.0 {
            return Err("zero raised to a negative power".into());
        }
        Ok(base.powi(exp as i32))
    } else if base < 0.0 {
        Err(format!("negative base {base} with non-integer exponent {exp}"))
    } else {
        Ok(base.powf(exp))
    }
}

fn folded(v: f64) -> Option<Expr> {
    v.is_finite().then_some(Expr::Num(v))
}

pub fn neg(a: Expr) -> Expr {
    match a {
        Expr::Num(v) => Expr::Num(-v),
        Expr::Neg(inner) => *inner,
        a => Expr::Neg(Box::new(a)),
    }
}

pub fn add(a: Expr, b: Expr) -> Expr {
    match (a.as_num(), b.as_num()) {
        (Some(x), Some(y)) => folded(x + y).unwrap_or_else(|| Expr::Add(Box::new(a), Box::new(b))),
        (Some(x), _) if x == 0.0 => b,
        (_, Some(y)) if y == 0.0 => a,
        _ => Expr::Add(Box::new(a), Box::new(b)),
    }
}

pub fn sub(a: Expr, b: Expr) -> Expr {
    match (a.as_num(), b.as_num()) {
        (Some(x), Some(y)) => folded(x - y).unwrap_or_else(|| Expr::Sub(Box::new(a), Box::new(b))),
        (Some(x), _) if x == 0.0 => neg(b),
        (_, Some(y)) if y == 0.0 => a,
        _ => Expr::Sub(Box::new(a), Box::new(b)),
    }
}

pub fn mul(a: Expr, b: Expr) -> Expr {
    match (a.as_num(), b.as_num()) {
        (Some(x), Some(y)) => folded(x * y).unwrap_or_else(|| Expr::Mul(Box::new(a), Box::new(b))),
        (Some(x), _) | (_, Some(x)) if x == 0.0 => Expr::Num(0.0),
        (Some(x), _) if x == 1.0 => b,
        (_, Some(y)) if y == 1.0 => a,
        (Some(x), _) if x == -1.0 => neg(b),
        (_, Some(y)) if y == -1.0 => neg(a),
        _ => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

pub fn div(a: Expr, b: Expr) -> Expr {
    match (a.as_num(), b.as_num()) {
        (Some(x), Some(y)) if y != 0.0 => {
            folded(x / y).unwrap_or_else(|| Expr::Div(Box::new(a), Box::new(b)))
        }
        (Some(x), _) if x == 0.0 => Expr::Num(0.0),
        (_, Some(y)) if y == 1.0 => a,
        _ => Expr::Div(Box::new(a), Box::new(b)),
    }
}

pub fn pow_expr(a: Expr, b: Expr) -> Expr {
    match (a.as_num(), b.as_num()) {
        (Some(x), Some(y)) => pow(x, y)
            .ok()
            .and_then(folded)
            .unwrap_or_else(|| Expr::Pow(Box::new(a), Box::new(b))),
        (_, Some(y)) if y == 0.0 => Expr::Num(1.0),
        (_, Some(y)) if y == 1.0 => a,
        _ => Expr::Pow(Box::new(a), Box::new(b)),
    }
}

pub fn call(f: Func, a: Expr) -> Expr {
    Expr::Call(f, Box::new(a))
}

impl fmt::Display for Expr {
    /// Prints a form that re-parses to the same tree: every compound
    /// operand is parenthesised.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) if *v < 0.0 || (*v == 0.0 && v.is_sign_negative()) => write!(f, "(-{})", -v),
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Pi => f.write_str("pi"),
            Expr::E => f.write_str("e"),
            Expr::T => f.write_str("t"),
            Expr::Neg(a) => write!(f, "(-{})", Operand(a)),
            Expr::Add(a, b) => write!(f, "({} + {})", Operand(a), Operand(b)),
            Expr::Sub(a, b) => write!(f, "({} - {})", Operand(a), Operand(b)),
            Expr::Mul(a, b) => write!(f, "({} * {})", Operand(a), Operand(b)),
            Expr::Div(a, b) => write!(f, "({} / {})", Operand(a), Operand(b)),
            Expr::Pow(a, b) => write!(f, "({} ^ {})", Operand(a), Operand(b)),
            Expr::Call(func, a) => write!(f, "{}({})", func.name(), Inner(a)),
        }
    }
}

/// Operand position: compound nodes already carry their parentheses.
struct Operand<'a>(&'a Expr);

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Function argument: strip one redundant pair of parentheses.
struct Inner<'a>(&'a Expr);

impl fmt::Display for Inner<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.0.to_string();
        match self.0 {
            Expr::Add(..) | Expr::Sub(..) | Expr::Mul(..) | Expr::Div(..) | Expr::Pow(..) => {
                f.write_str(&s[1..s.len() - 1])
            }
            _ => f.write_str(&s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn evaluates_grammar() {
        assert_eq!(p("2 + 3 * 4").eval(0.0).unwrap(), 14.0);
        assert_eq!(p("2 ^ 3 ^ 2").eval(0.0).unwrap(), 512.0);
        assert_eq!(p("-t ^ 2").eval(3.0).unwrap(), 9.0);
        assert_eq!(p("-(t ^ 2)").eval(3.0).unwrap(), -9.0);
        assert_eq!(p("2 ^ -1").eval(0.0).unwrap(), 0.5);
        assert!((p("sin(pi / 2) + log(e)").eval(0.0).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(p("(-2) ^ 3").eval(0.0).unwrap(), -8.0);
        assert_eq!(p("abs(t)").eval(-2.5).unwrap(), 2.5);
    }

    #[test]
    fn domain_errors() {
        assert!(p("log(t)").eval(-1.0).is_err());
        assert!(p("log(t)").eval(0.0).is_err());
        assert!(p("sqrt(t)").eval(-1.0).is_err());
        assert!(p("1 / t").eval(0.0).is_err());
        assert!(p("t ^ 0.5").eval(-4.0).is_err());
        assert!(p("exp(t)").eval(1000.0).is_err());
    }

    #[test]
    fn constructors_fold() {
        assert_eq!(add(Expr::Num(1.0), Expr::Num(2.0)), Expr::Num(3.0));
        assert_eq!(mul(Expr::Num(0.0), Expr::T), Expr::Num(0.0));
        assert_eq!(mul(Expr::T, Expr::Num(1.0)), Expr::T);
        assert_eq!(sub(Expr::Num(0.0), Expr::T), Expr::Neg(Box::new(Expr::T)));
        assert_eq!(pow_expr(Expr::T, Expr::Num(1.0)), Expr::T);
        assert_eq!(neg(neg(Expr::T)), Expr::T);
        // division by a literal zero is left for evaluation to reject
        assert!(matches!(div(Expr::Num(1.0), Expr::Num(0.0)), Expr::Div(..)));
    }

    #[test]
    fn display_reparses() {
        for s in ["-t ^ 2", "2 ^ -t", "sin(t) / sqrt(3)", "-(-(t))", "1e-5 * t", "(3 - -2) * t"] {
            let e = p(s);
            let printed = e.to_string();
            let again = p(&printed);
            assert_eq!(again.to_string(), printed, "{s}");
            for t in [-1.3, 0.2, 2.0] {
                assert_eq!(e.eval(t).ok(), again.eval(t).ok(), "{s} at {t}");
            }
        }
        assert_eq!(Expr::Num(-3.0).to_string(), "(-3)");
    }
}
