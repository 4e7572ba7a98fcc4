use super::*;

fn p(s: &str) -> Expr {
    parse_expr(s).unwrap()
}

#[test]
fn cos_squared_reduces() {
    assert_eq!(p("cos(x)^2"), p("1/2 + cos(2*x)/2"));
    assert_eq!(p("sin(x)*cos(x)"), p("sin(2*x)/2"));
}

#[test]
fn index_shifts_fold_into_alternating_sign() {
    assert_eq!(p("cos(n*pi)"), p("(-1)^n"));
    assert_eq!(p("sin(n*pi + x)"), p("(-1)^n*sin(x)"));
    assert_eq!(p("sin(pi/2 - x)"), p("cos(x)"));
    assert_eq!(p("sin(-3*x)"), p("-sin(3*x)"));
}

#[test]
fn constant_angles_shed_half_turns() {
    assert!(p("cos(pi-1) - cos(pi+1)").is_zero());
    assert_eq!(p("sin(1-pi)"), p("-sin(1)"));
    assert_eq!(p("cos(3*pi/2+2)"), p("sin(2)"));
    assert_eq!(p("sin(pi/3)").to_string(), "sin(pi/3)");
}

#[test]
fn rational_cancellation() {
    assert_eq!(p("(n^2-9)/(n-3)"), p("n+3"));
    assert_eq!(p("1/(n-3) - 1/(n+3)"), p("6/(n^2-9)"));
}

#[test]
fn render_round_trips() {
    for s in [
        "3*x^2*cos(7*x)",
        "-12*(n^2+49)*(-1)^n/(n^4-98*n^2+2401)",
        "(98*pi^2+3)/98",
        "-%i/4",
        "f(theta)*sin(2*n*theta)",
        "exp(9*x/2-81*t/4)*sin(pi*x)",
        "r^(2*n)/n",
        "integrate(f(theta)*sin(2*n*theta),theta,0,pi/2)",
        "1.366663216985716*bessel_j(0,2.404825557695772*r)",
        "x/(2*L)",
    ] {
        let e = p(s);
        let back = p(&e.to_string());
        assert_eq!(e, back, "{} -> {}", s, e);
    }
}

#[test]
fn derivative_product_rule() {
    let d = differentiate(&p("x^2*cos(7*x)"), "x").unwrap();
    assert_eq!(d, p("2*x*cos(7*x) - 7*x^2*sin(7*x)"));
    let d = differentiate(&p("exp(-pi^2*n^2*t)"), "t").unwrap();
    assert_eq!(d, p("-pi^2*n^2*exp(-pi^2*n^2*t)"));
}

#[test]
fn definite_integrals() {
    let v = integrate_definite(&p("x*sin(3*x)"), "x", &Expr::zero(), &Expr::pi()).unwrap();
    assert_eq!(v, p("pi/3"));
    let v = integrate_definite(
        &p("f(theta)*sin(2*n*theta)"),
        "theta",
        &Expr::zero(),
        &p("pi/2"),
    )
    .unwrap();
    assert!(v.contains_opaque());
    let v = integrate_definite(&p("x"), "x", &Expr::one(), &Expr::one()).unwrap();
    assert!(v.is_zero());
}

#[test]
fn parse_errors_carry_positions() {
    match parse_expr("3*+") {
        Err(crate::Error::Parse { pos, .. }) => assert_eq!(pos, 3),
        other => panic!("{:?}", other),
    }
    assert!(parse_expr("n(x)").is_err());
    assert!(parse_expr("pi(2)").is_err());
    assert!(matches!(
        parse_expr("sin(sin(x))"),
        Err(crate::Error::Fragment(_))
    ));
}
