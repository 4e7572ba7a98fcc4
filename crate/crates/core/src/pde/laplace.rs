use std::collections::{BTreeMap, BTreeSet};

use super::eigen::{eigenpairs, EigenSystem};
use super::{positive, BoundaryRecord, X};
use crate::error::{Error, Result};
use crate::expr::{differentiate, integrate_definite, Expr, INDEX};
use crate::fourier::{project, Projection};
use crate::series::{SeriesSolution, Truncation};

pub const Y: &str = "y";
pub const R: &str = "r";
pub const THETA: &str = "theta";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaplaceBc {
    Dirichlet,
    Neumann,
}

/// Rectangle `[0,a]×[0,b]`: each flag selects `u` (false) or the normal
/// coordinate derivative (true) on the bottom, top, left and right sides,
/// with data `f0(x)`, `fb(x)`, `g0(y)`, `ga(y)`. Polar problems use `r`, `theta`.
#[derive(Clone, Debug, PartialEq)]
pub enum LaplaceSpec {
    Rectangle {
        a: Expr,
        b: Expr,
        flags: [bool; 4],
        f0: Expr,
        fb: Expr,
        g0: Expr,
        ga: Expr,
    },
    Disk {
        r: Expr,
        bc: LaplaceBc,
        f: Expr,
    },
    Wedge {
        r: Expr,
        alpha: Expr,
        bc: LaplaceBc,
        f: Expr,
    },
    Annulus {
        r1: Expr,
        r2: Expr,
        bc: LaplaceBc,
        f: Expr,
        g: Expr,
    },
}

/// One expansion `Σ term(n)` with its own singular values.
struct Part {
    general: Expr,
    singular: BTreeMap<u64, Expr>,
}

impl Part {
    fn new(p: Projection, build: impl Fn(&Expr, &Expr) -> Result<Expr>) -> Result<Part> {
        let general = build(&Expr::sym(INDEX), &p.general)?;
        let singular = p
            .singular
            .into_iter()
            .map(|(j, v)| Ok((j, build(&Expr::int(j as i64), &v)?)))
            .collect::<Result<_>>()?;
        Ok(Part { general, singular })
    }
}

fn combine(closed: Expr, parts: Vec<Part>, order: Truncation) -> SeriesSolution {
    let indices: BTreeSet<u64> = parts
        .iter()
        .flat_map(|p| p.singular.keys().copied())
        .collect();
    let mut closed = closed;
    let mut singular_terms = Vec::new();
    for j in indices {
        let term = parts.iter().fold(Expr::zero(), |acc, p| {
            let v = p
                .singular
                .get(&j)
                .cloned()
                .unwrap_or_else(|| p.general.at_index(j as i64));
            &acc + &v
        });
        closed = &closed + &term;
        singular_terms.push((j as i64, term));
    }
    let sol = SeriesSolution {
        closed,
        excluded: singular_terms.iter().map(|(j, _)| *j).collect(),
        singular_terms,
        summand: parts.iter().fold(Expr::zero(), |acc, p| &acc + &p.general),
        start: 1,
        symmetric: false,
        truncation: Truncation::Infinite,
    };
    match order {
        Truncation::Infinite => sol,
        Truncation::Finite(n) => SeriesSolution::closed_only(sol.truncate(n), order),
    }
}

/// Solves Laplace's equation by separation of variables.
pub fn solve_laplace(spec: &LaplaceSpec, order: Truncation) -> Result<SeriesSolution> {
    if order == Truncation::Finite(0) {
        return Err(Error::invalid("truncation order must be positive"));
    }
    match spec {
        LaplaceSpec::Rectangle {
            a,
            b,
            flags,
            f0,
            fb,
            g0,
            ga,
        } => rectangle(a, b, *flags, [f0, fb, g0, ga], order),
        LaplaceSpec::Disk { r, bc, f } => disk(r, *bc, f, order),
        LaplaceSpec::Wedge { r, alpha, bc, f } => wedge(r, alpha, *bc, f, order),
        LaplaceSpec::Annulus { r1, r2, bc, f, g } => annulus(r1, r2, *bc, f, g, order),
    }
}

fn side_record(flag: bool) -> BoundaryRecord {
    if flag {
        BoundaryRecord::neumann(Expr::zero())
    } else {
        BoundaryRecord::dirichlet(Expr::zero())
    }
}

/// One side carrying data `h(s)`, `s ∈ [0, len]` along the side, homogeneous
/// elsewhere. `nu` is the normal coordinate on `[0, depth]`; the data sits at
/// `nu = 0` when `at_start`.
#[allow(clippy::too_many_arguments)]
fn rectangle_side(
    h: &Expr,
    s: &str,
    len: &Expr,
    ends: (bool, bool),
    nu: &str,
    depth: &Expr,
    at_start: bool,
    data_flag: bool,
    opposite_flag: bool,
) -> Result<(Expr, Option<Part>)> {
    if h.is_zero() {
        return Ok((Expr::zero(), None));
    }
    let EigenSystem::ClosedForm(m) =
        eigenpairs(&side_record(ends.0), &side_record(ends.1), len, 0)?
    else {
        unreachable!("binary flags give closed-form spectra");
    };
    let sv = Expr::sym(s);
    let nv = Expr::sym(nu);
    let phi = m.eigenfunction.subst(X, &sv);
    // distance from the side opposite the data
    let dist = if at_start { depth - &nv } else { nv.clone() };
    let data_at = if at_start {
        Expr::zero()
    } else {
        depth.clone()
    };
    let normal = |k: &Expr| -> Expr {
        if opposite_flag {
            Expr::cosh(&(k * &dist))
        } else {
            Expr::sinh(&(k * &dist))
        }
    };
    let boundary_value = |y: &Expr| -> Result<Expr> {
        let v = if data_flag {
            differentiate(y, nu)?
        } else {
            y.clone()
        };
        Ok(v.subst(nu, &data_at))
    };

    let mut closed = Expr::zero();
    if let Some((phi0, norm0)) = &m.zero {
        let mean = &integrate_definite(&(h * &phi0.subst(X, &sv)), s, &Expr::zero(), len)? / norm0;
        let y0 = if opposite_flag {
            Expr::one()
        } else {
            dist.clone()
        };
        let b0 = boundary_value(&y0)?;
        if b0.is_zero() {
            if !mean.is_zero() {
                return Err(Error::invalid("Neumann data on a side must have zero mean"));
            }
        } else {
            closed = &(&mean / &b0) * &y0;
        }
    }
    let proj = project(h, s, &Expr::zero(), len, &phi, &m.wavenumber, &m.norm.inv())?;
    let part = Part::new(proj, |n, c| {
        let k = m.wavenumber.subst(INDEX, n);
        let y = normal(&k);
        Ok(&(&(c * &phi.subst(INDEX, n)) * &y) / &boundary_value(&y)?)
    })?;
    Ok((closed, Some(part)))
}

fn rectangle(
    a: &Expr,
    b: &Expr,
    flags: [bool; 4],
    data: [&Expr; 4],
    order: Truncation,
) -> Result<SeriesSolution> {
    positive("a", a)?;
    positive("b", b)?;
    let [bottom, top, left, right] = flags;
    let sides = [
        rectangle_side(data[0], X, a, (left, right), Y, b, true, bottom, top)?,
        rectangle_side(data[1], X, a, (left, right), Y, b, false, top, bottom)?,
        rectangle_side(data[2], Y, b, (bottom, top), X, a, true, left, right)?,
        rectangle_side(data[3], Y, b, (bottom, top), X, a, false, right, left)?,
    ];
    let mut closed = Expr::zero();
    let mut parts = Vec::new();
    for (c, p) in sides {
        closed = &closed + &c;
        parts.extend(p);
    }
    Ok(combine(closed, parts, order))
}

/// Projections of `f(θ)` on `cos nθ`, `sin nθ` over `[0, period]` with
/// wavenumber `k(n)`, and the mean.
fn angular(f: &Expr, period: &Expr, k: &Expr) -> Result<(Expr, Projection, Projection)> {
    let th = Expr::sym(THETA);
    let arg = k * &th;
    let scale = &Expr::int(2) / period;
    let a = project(f, THETA, &Expr::zero(), period, &Expr::cos(&arg), k, &scale)?;
    let b = project(f, THETA, &Expr::zero(), period, &Expr::sin(&arg), k, &scale)?;
    let mean = &integrate_definite(f, THETA, &Expr::zero(), period)? / period;
    Ok((mean, a, b))
}

fn check_compatible(mean: &Expr) -> Result<()> {
    if mean.is_zero() || mean.contains_opaque() {
        return Ok(());
    }
    match mean.as_scalar() {
        Some(s) if s.to_c64().norm() <= 1e-10 => Ok(()),
        _ => Err(Error::invalid(format!(
            "Neumann data must integrate to zero, mean is {}",
            mean
        ))),
    }
}

/// `(r/R)^ν`.
fn radial(nu: &Expr, radius: &Expr) -> Expr {
    &Expr::pow(&Expr::sym(R), nu) * &Expr::pow(radius, &-nu.clone())
}

fn disk(radius: &Expr, bc: LaplaceBc, f: &Expr, order: Truncation) -> Result<SeriesSolution> {
    positive("R", radius)?;
    let two_pi = &Expr::int(2) * &Expr::pi();
    let n = Expr::sym(INDEX);
    let (mean, a, b) = angular(f, &two_pi, &n)?;
    let th = Expr::sym(THETA);
    let gain = |n: &Expr| -> Expr {
        match bc {
            LaplaceBc::Dirichlet => radial(n, radius),
            LaplaceBc::Neumann => &(radius / n) * &radial(n, radius),
        }
    };
    let closed = match bc {
        LaplaceBc::Dirichlet => mean,
        LaplaceBc::Neumann => {
            check_compatible(&mean)?;
            Expr::zero()
        }
    };
    let pa = Part::new(a, |n, c| Ok(&(c * &gain(n)) * &Expr::cos(&(n * &th))))?;
    let pb = Part::new(b, |n, c| Ok(&(c * &gain(n)) * &Expr::sin(&(n * &th))))?;
    Ok(combine(closed, vec![pa, pb], order))
}

fn wedge(
    radius: &Expr,
    alpha: &Expr,
    bc: LaplaceBc,
    f: &Expr,
    order: Truncation,
) -> Result<SeriesSolution> {
    positive("R", radius)?;
    positive("α", alpha)?;
    let two_pi = &Expr::int(2) * &Expr::pi();
    if alpha.equivalent(&two_pi) {
        return disk(radius, bc, f, order);
    }
    if let Some(s) = (alpha / &two_pi).as_scalar() {
        if s.cmp_value(&crate::scalar::Scalar::one()) == std::cmp::Ordering::Greater {
            return Err(Error::invalid("wedge opening must not exceed 2π"));
        }
    }
    let th = Expr::sym(THETA);
    let k = &(&Expr::sym(INDEX) * &Expr::pi()) / alpha;
    let mode = Expr::sin(&(&k * &th));
    let proj = project(
        f,
        THETA,
        &Expr::zero(),
        alpha,
        &mode,
        &k,
        &(&Expr::int(2) / alpha),
    )?;
    let part = Part::new(proj, |n, c| {
        let nu = k.subst(INDEX, n);
        let gain = match bc {
            LaplaceBc::Dirichlet => radial(&nu, radius),
            LaplaceBc::Neumann => &(radius / &nu) * &radial(&nu, radius),
        };
        Ok(&(c * &gain) * &mode.subst(INDEX, n))
    })?;
    Ok(combine(Expr::zero(), vec![part], order))
}

fn annulus(
    r1: &Expr,
    r2: &Expr,
    bc: LaplaceBc,
    f: &Expr,
    g: &Expr,
    order: Truncation,
) -> Result<SeriesSolution> {
    if bc == LaplaceBc::Neumann {
        return Err(Error::Unsupported("annulus with Neumann data".into()));
    }
    positive("R1", r1)?;
    positive("R2", r2)?;
    if let (Some(a), Some(b)) = (r1.as_scalar(), r2.as_scalar()) {
        if a.cmp_value(&b) != std::cmp::Ordering::Less {
            return Err(Error::invalid("annulus radii must satisfy R1 < R2"));
        }
    }
    let two_pi = &Expr::int(2) * &Expr::pi();
    let n = Expr::sym(INDEX);
    let th = Expr::sym(THETA);
    let r = Expr::sym(R);
    let (fm, fa, fb) = angular(f, &two_pi, &n)?;
    let (gm, ga, gb) = angular(g, &two_pi, &n)?;

    let (l1, l2) = (Expr::log(r1), Expr::log(r2));
    let b0 = &(&gm - &fm) / &(&l2 - &l1);
    let closed = &(&fm - &(&b0 * &l1)) + &(&b0 * &Expr::log(&r));

    // radial profile equal to 1 at `at` and 0 at `other`
    let profile = |n: &Expr, at: &Expr, other: &Expr| -> Expr {
        let num = &radial(n, other) - &radial(&-n.clone(), other);
        let den = &(&Expr::pow(at, n) * &Expr::pow(other, &-n.clone()))
            - &(&Expr::pow(at, &-n.clone()) * &Expr::pow(other, n));
        &num / &den
    };
    let parts = vec![
        Part::new(fa, |n, c| {
            Ok(&(c * &profile(n, r1, r2)) * &Expr::cos(&(n * &th)))
        })?,
        Part::new(fb, |n, c| {
            Ok(&(c * &profile(n, r1, r2)) * &Expr::sin(&(n * &th)))
        })?,
        Part::new(ga, |n, c| {
            Ok(&(c * &profile(n, r2, r1)) * &Expr::cos(&(n * &th)))
        })?,
        Part::new(gb, |n, c| {
            Ok(&(c * &profile(n, r2, r1)) * &Expr::sin(&(n * &th)))
        })?,
    ];
    Ok(combine(closed, parts, order))
}

/// `u_rr + u_r/r + u_θθ/r²`.
pub fn polar_laplacian(u: &Expr) -> Result<Expr> {
    let ur = differentiate(u, R)?;
    let urr = differentiate(&ur, R)?;
    let utt = differentiate(&differentiate(u, THETA)?, THETA)?;
    let r = Expr::sym(R);
    Ok(&(&urr + &(&ur / &r)) + &(&utt / &(&r * &r)))
}

/// `u_xx + u_yy`.
pub fn cartesian_laplacian(u: &Expr) -> Result<Expr> {
    Ok(&differentiate(&differentiate(u, X)?, X)? + &differentiate(&differentiate(u, Y)?, Y)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn p(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn disk_cosine_data() {
        let s = solve_laplace(
            &LaplaceSpec::Disk {
                r: Expr::one(),
                bc: LaplaceBc::Dirichlet,
                f: p("cos(theta)"),
            },
            Truncation::Infinite,
        )
        .unwrap();
        assert!(s.summand.is_zero());
        assert!(s.closed.equivalent(&p("r*cos(theta)")), "{}", s.closed);
    }

    #[test]
    fn wedge_neumann_opaque() {
        let spec = LaplaceSpec::Wedge {
            r: Expr::one(),
            alpha: p("pi/2"),
            bc: LaplaceBc::Neumann,
            f: p("f(theta)"),
        };
        let s = solve_laplace(&spec, Truncation::Infinite).unwrap();
        let want =
            p("2/pi*sin(2*n*theta)*r^(2*n)*integrate(f(theta)*sin(2*n*theta), theta, 0, pi/2)/n");
        assert!(s.summand.equivalent(&want), "{}", s.summand);
        assert!(s.closed.is_zero());
    }

    #[test]
    fn rectangle_single_mode() {
        let spec = LaplaceSpec::Rectangle {
            a: Expr::int(2),
            b: Expr::int(3),
            flags: [false; 4],
            f0: p("sin(pi*x/2)"),
            fb: Expr::zero(),
            g0: Expr::zero(),
            ga: Expr::zero(),
        };
        let s = solve_laplace(&spec, Truncation::Infinite).unwrap();
        let want = &p("sin(pi*x/2)*sinh(pi*(3-y)/2)") / &Expr::sinh(&p("3*pi/2"));
        assert!(s.closed.equivalent(&want), "{}", s.closed);
        assert!(cartesian_laplacian(&s.closed).unwrap().is_zero());
    }

    #[test]
    fn annulus_terms_are_harmonic() {
        let spec = LaplaceSpec::Annulus {
            r1: Expr::one(),
            r2: Expr::int(2),
            bc: LaplaceBc::Dirichlet,
            f: p("1 + cos(theta)"),
            g: p("theta"),
        };
        let s = solve_laplace(&spec, Truncation::Infinite).unwrap();
        assert!(polar_laplacian(&s.summand).unwrap().is_zero());
        assert!(polar_laplacian(&s.closed).unwrap().is_zero());
        let at_inner = s.closed.subst(R, &Expr::one());
        let g_part = s.summand.subst(R, &Expr::one());
        assert!(g_part.is_zero(), "{}", g_part);
        assert!(at_inner.equivalent(&p("1 + cos(theta)")), "{}", at_inner);
        let neumann = LaplaceSpec::Annulus {
            r1: Expr::one(),
            r2: Expr::int(2),
            bc: LaplaceBc::Neumann,
            f: p("1"),
            g: p("1"),
        };
        assert!(matches!(
            solve_laplace(&neumann, Truncation::Infinite),
            Err(Error::Unsupported(_))
        ));
    }
}
