use super::{add, call, div, mul, neg, pow_expr, sub, Expr, Func};

pub(super) fn derivative(e: &Expr) -> Expr {
    match e {
        Expr::Num(_) | Expr::Pi | Expr::E => Expr::Num(0.0),
        Expr::T => Expr::Num(1.0),
        Expr::Neg(a) => neg(derivative(a)),
        Expr::Add(a, b) => add(derivative(a), derivative(b)),
        Expr::Sub(a, b) => sub(derivative(a), derivative(b)),
        Expr::Mul(a, b) => add(
            mul(derivative(a), (**b).clone()),
            mul((**a).clone(), derivative(b)),
        ),
        Expr::Div(a, b) if b.is_constant() => div(derivative(a), (**b).clone()),
        Expr::Div(a, b) => div(
            sub(
                mul(derivative(a), (**b).clone()),
                mul((**a).clone(), derivative(b)),
            ),
            pow_expr((**b).clone(), Expr::Num(2.0)),
        ),
        Expr::Pow(a, b) if b.is_constant() => {
            let lowered = match **b {
                Expr::Num(k) => Expr::Num(k - 1.0),
                _ => sub((**b).clone(), Expr::Num(1.0)),
            };
            mul(
                mul((**b).clone(), pow_expr((**a).clone(), lowered)),
                derivative(a),
            )
        }
        Expr::Pow(a, b) if a.is_constant() => mul(
            mul(e.clone(), call(Func::Log, (**a).clone())),
            derivative(b),
        ),
        // u^v (v' log u + v u' / u)
        Expr::Pow(a, b) => mul(
            e.clone(),
            add(
                mul(derivative(b), call(Func::Log, (**a).clone())),
                div(mul((**b).clone(), derivative(a)), (**a).clone()),
            ),
        ),
        Expr::Call(f, a) => {
            let u = (**a).clone();
            let du = derivative(a);
            match f {
                Func::Sin => mul(call(Func::Cos, u), du),
                Func::Cos => neg(mul(call(Func::Sin, u), du)),
                Func::Tan => div(du, pow_expr(call(Func::Cos, u), Expr::Num(2.0))),
                Func::Sqrt => div(du, mul(Expr::Num(2.0), call(Func::Sqrt, u))),
                Func::Exp => mul(call(Func::Exp, u), du),
                Func::Log => div(du, u),
                // sign(u) u', undefined where u = 0
                Func::Abs => mul(div(u.clone(), call(Func::Abs, u)), du),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::parse_expr;

    fn d(s: &str) -> String {
        parse_expr(s).unwrap().differentiate().to_string()
    }

    #[test]
    fn textbook_rules() {
        assert_eq!(d("sin(t)"), "cos(t)");
        assert_eq!(d("t^3"), "(3 * (t ^ 2))");
        assert_eq!(d("sin(t)/sqrt(3)"), "(cos(t) / sqrt(3))");
        assert_eq!(d("cos(t)"), "(-sin(t))");
        assert_eq!(d("5"), "0");
        assert_eq!(d("t"), "1");
    }

    #[test]
    fn abs_derivative_is_sign() {
        let e = parse_expr("abs(t^3 - 1)").unwrap().differentiate();
        assert!((e.eval(2.0).unwrap() - 12.0).abs() < 1e-12);
        assert!((e.eval(0.0).unwrap() + 0.0).abs() < 1e-12);
        assert!(e.eval(1.0).is_err());
    }

    #[test]
    fn matches_central_differences() {
        let cases = [
            "tan(t) * exp(-t)",
            "sqrt(2 + sin(t)) / (1 + t^2)",
            "log(3 + cos(t)) ^ 2",
            "t ^ t",
            "2 ^ sin(t)",
            "abs(t - 5) * t",
            "(1 + t) ^ pi",
        ];
        for s in cases {
            let e = parse_expr(s).unwrap();
            let de = e.differentiate();
            for &t in &[0.3, 0.9, 1.4] {
                let h = 1e-5;
                let fd = (e.eval(t + h).unwrap() - e.eval(t - h).unwrap()) / (2.0 * h);
                let exact = de.eval(t).unwrap();
                assert!(
                    (fd - exact).abs() <= 1e-7 * exact.abs().max(1.0),
                    "{s} at {t}: {fd} vs {exact}"
                );
            }
        }
    }
}
