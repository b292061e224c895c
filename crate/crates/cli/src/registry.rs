use prodxform_core::lattice::{
    continuum_limit_experiment, cos_half_angle_product, cos_product_lemma, reciprocity_10,
    reciprocity_11, reciprocity_12, reciprocity_13, reciprocity_14, shifted_cos_product_lemma,
    sin_product_lemma,
};
use prodxform_core::transforms::*;
use prodxform_core::{Float, PrecisionContext, Result};

use crate::params::{ParamKind, ParsedParams};

/// Which tolerance decides the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tolerance {
    /// Truncated infinite identities: the context's target tolerance.
    Target,
    /// Finite identities: `2^(-bits+16)`, rounding only.
    Exact,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    /// Feasible range, for display.
    pub range: &'static str,
}

/// What an evaluator hands back to the runner.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub lhs: Float,
    pub rhs: Float,
    pub abs_err: Float,
    pub tail_bound: Float,
    pub terms_used: u64,
    pub vacuous: bool,
    pub message: String,
}

impl From<IdentityPair> for Evaluation {
    fn from(p: IdentityPair) -> Self {
        Self {
            abs_err: p.abs_residual(),
            tail_bound: p.combined_bound(),
            terms_used: p.lhs.terms_used + p.rhs.terms_used,
            vacuous: p.vacuous,
            lhs: p.lhs.value,
            rhs: p.rhs.value,
            message: String::new(),
        }
    }
}

type Evaluator = fn(&ParsedParams, &PrecisionContext) -> Result<Evaluation>;

#[derive(Clone)]
pub struct IdentityDescriptor {
    pub identity_id: &'static str,
    pub params: Vec<ParamSpec>,
    /// The identity as displayed, in plain text.
    pub citation: &'static str,
    pub tolerance: Tolerance,
    /// Canonical grid points as whitespace-separated `name=value` lists.
    pub canonical: Vec<&'static str>,
    pub evaluate: Evaluator,
}

impl std::fmt::Debug for IdentityDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityDescriptor")
            .field("identity_id", &self.identity_id)
            .field("params", &self.params)
            .field("citation", &self.citation)
            .field("tolerance", &self.tolerance)
            .finish()
    }
}

const POSITIVE: &str = "(0, inf)";

fn real(name: &'static str, range: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Real, range }
}

fn int(name: &'static str, range: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Integer, range }
}

fn alpha() -> ParamSpec {
    real("alpha", POSITIVE)
}

fn beta() -> ParamSpec {
    real("beta", POSITIVE)
}

fn lattice_params(x_range: &'static str) -> Vec<ParamSpec> {
    vec![int("n", ">= 1"), int("m", ">= 1"), real("x", x_range)]
}

fn entry(
    identity_id: &'static str,
    params: Vec<ParamSpec>,
    citation: &'static str,
    tolerance: Tolerance,
    canonical: Vec<&'static str>,
    evaluate: Evaluator,
) -> IdentityDescriptor {
    IdentityDescriptor { identity_id, params, citation, tolerance, canonical, evaluate }
}

fn pair(r: Result<IdentityPair>) -> Result<Evaluation> {
    r.map(Evaluation::from)
}

const AB_GRID: [&str; 4] = ["alpha=2 beta=1/2", "alpha=1/2 beta=1", "alpha=3 beta=1/4", "alpha=1/3 beta=2"];
const OBLIQUE_GRID: [&str; 5] = [
    "alpha=2 theta=pi/6 y=1/2",
    "alpha=1/2 theta=pi/4 y=1",
    "alpha=3 theta=0 y=1/4",
    "alpha=1/3 theta=1.2 y=2",
    "alpha=5/2 theta=0.9 y=3/4",
];

fn eval_f3(p: &ParsedParams, ctx: &PrecisionContext) -> Result<Evaluation> {
    let (a, b) = (p.real("alpha"), p.real("beta"));
    let pf = f_partial_fraction(a, b, ctx)?;
    let lat = f_lattice_double_sum(a, b, ctx)?;
    let bes = f_bessel_double_sum(a, b, ctx)?;
    let prec = ctx.bits();
    let d = |x: &Float, y: &Float| Float::with_val(prec, x - y).abs();
    let worst = d(&pf.value, &lat.value).max(&d(&pf.value, &bes.value)).max(&d(&lat.value, &bes.value));
    let mut tail = Float::with_val(prec, &pf.tail_bound + &lat.tail_bound);
    tail += &bes.tail_bound;
    Ok(Evaluation {
        message: format!("lattice={}", lat.value.to_string_radix(10, Some(40))),
        lhs: pf.value,
        rhs: bes.value,
        abs_err: worst,
        tail_bound: tail,
        terms_used: pf.terms_used + lat.terms_used + bes.terms_used,
        vacuous: false,
    })
}

fn eval_limit15(p: &ParsedParams, ctx: &PrecisionContext) -> Result<Evaluation> {
    let table = continuum_limit_experiment(p.ratio("alpha"), p.real("beta"), &[p.integer("n")], ctx)?;
    let row = &table.rows[0];
    let prec = ctx.bits();
    Ok(Evaluation {
        lhs: row.sinh_ratio_direct.clone(),
        rhs: row.sinh_ratio.clone(),
        abs_err: Float::with_val(prec, &row.sinh_ratio_direct - &row.sinh_ratio).abs(),
        tail_bound: Float::new(prec),
        terms_used: (2 * row.n + 2 * row.m - 2) as u64,
        vacuous: row.n == row.m,
        message: format!(
            "limit={} distance={}",
            table.sinh_ratio_target.to_string_radix(10, Some(30)),
            row.sinh_ratio_err.to_string_radix(10, Some(12)),
        ),
    })
}

/// The full registry in a fixed order.
pub fn list_identities() -> Vec<IdentityDescriptor> {
    use Tolerance::{Exact, Target};
    vec![
        entry("eq1", vec![alpha()],
            "prod ((1-q^n)/(1+q^n))^((-1)^n), q = e^(-pi alpha), equals alpha^(-1/2) times the same product at 1/alpha",
            Target, vec!["alpha=1/3", "alpha=1/2", "alpha=2", "alpha=3", "alpha=7.7"],
            |p, c| pair(product_eq1(p.real("alpha"), c))),
        entry("eq2", vec![alpha()],
            "sum n(-1)^n/sinh(pi alpha n) + alpha^(-2) sum n(-1)^n/sinh(pi n/alpha) = -1/(2 pi alpha)",
            Target, vec!["alpha=1/3", "alpha=1/2", "alpha=1", "alpha=2", "alpha=3", "alpha=7.7"],
            |p, c| pair(series_transform_eq2(p.real("alpha"), c))),
        entry("eq4", vec![alpha()],
            "e^(-pi alpha/12) prod (1 - e^(-2 pi alpha n)) = alpha^(-1/2) e^(-pi/(12 alpha)) prod (1 - e^(-2 pi n/alpha))",
            Target, vec!["alpha=1/3", "alpha=1/2", "alpha=2", "alpha=3", "alpha=7.7"],
            |p, c| pair(dedekind_eta_eq4(p.real("alpha"), c))),
        entry("f3", vec![alpha(), beta()],
            "alternating lattice sum f(alpha, beta) by partial fractions, by iterated double sum and by K0 double sum",
            Target,
            vec![
                "alpha=1/2 beta=1/2", "alpha=1/2 beta=1", "alpha=1/2 beta=2",
                "alpha=1 beta=1/2", "alpha=1 beta=1", "alpha=1 beta=2",
                "alpha=2 beta=1/2", "alpha=2 beta=1", "alpha=2 beta=2",
            ],
            eval_f3),
        entry("eq7", vec![alpha(), beta()],
            "prod over n in Z of [tanh(pi sqrt(alpha^2 n^2 + alpha beta^2)/2) / tanh(pi sqrt(n^2/alpha^2 + beta^2/alpha)/2)]^((-1)^n) = 1",
            Target, AB_GRID.to_vec(),
            |p, c| pair(unit_product_eq7_pair(p.real("alpha"), p.real("beta"), c))),
        entry("eq8", vec![alpha(), beta()],
            "prod tanh(pi alpha sqrt(n^2+beta^2)/2)^((-1)^n) = sqrt(tanh(pi beta/2)/tanh(pi alpha beta/2)) prod tanh(pi sqrt(n^2/alpha^2+beta^2)/2)^((-1)^n)",
            Target,
            vec![
                "alpha=1/2 beta=1/2", "alpha=1/2 beta=1", "alpha=1/2 beta=2",
                "alpha=2 beta=1/2", "alpha=2 beta=1", "alpha=2 beta=2",
            ],
            |p, c| pair(product_eq8(p.real("alpha"), p.real("beta"), c))),
        entry("eq10", vec![alpha(), beta()],
            "prod over odd k of (1 + e^(-pi alpha sqrt(k^2+beta^2)))/(1 + e^(-pi sqrt(k^2/alpha^2+beta^2))) = exp(1/2 int_0^inf log of the same ratio)",
            Target, AB_GRID.to_vec(),
            |p, c| pair(odd_product_integral_eq10(p.real("alpha"), p.real("beta"), c))),
        entry("eq11", vec![alpha(), beta()],
            "prod (1 - e^(-2 pi alpha sqrt(n^2+beta^2)))/(1 - e^(-2 pi sqrt(n^2/alpha^2+beta^2))) = sqrt((1-e^(-2 pi beta))/(1-e^(-2 pi alpha beta))) exp(int_0^inf log of the same ratio)",
            Target, AB_GRID.to_vec(),
            |p, c| pair(dedekind_gen_eq11(p.real("alpha"), p.real("beta"), c))),
        entry("eq12", vec![alpha(), beta()],
            "sum over n in Z of g(n) equals int over R of g, g(x) = ln(1 - e^(-2 pi alpha sqrt(x^2+beta^2))) - ln(1 - e^(-2 pi sqrt(x^2/alpha^2+beta^2)))",
            Target, AB_GRID.to_vec(),
            |p, c| pair(sum_equals_integral_eq12(p.real("alpha"), p.real("beta"), c))),
        entry("eq13", vec![alpha(), beta(), real("theta", "(0, 1/2)")],
            "theta-shifted sum over Z equals the integral over R, with the paired factors combined into 1 - 2 e^(-s) cos(2 pi theta) + e^(-2s)",
            Target,
            vec![
                "alpha=2 beta=1/2 theta=0.1", "alpha=1/2 beta=1 theta=1/4", "alpha=3 beta=1/4 theta=0.4",
                "alpha=1/3 beta=2 theta=0.3", "alpha=1 beta=1/2 theta=1/4",
            ],
            |p, c| pair(theta_sum_equals_integral_eq13(p.real("alpha"), p.real("beta"), p.real("theta"), c))),
        entry("legendre5", vec![alpha(), real("beta", "[0, inf)")],
            "prod (1 - 2 sqrt5/(1 + sqrt5 + 4 cosh(2 pi alpha sqrt(n^2+beta^2)/5)))^((n/5)) is invariant under alpha -> 1/alpha, beta -> alpha beta",
            Target, vec!["alpha=2 beta=0", "alpha=2 beta=1", "alpha=1/2 beta=1/2", "alpha=3 beta=1/4"],
            |p, c| pair(legendre5_product(p.real("alpha"), p.real("beta"), c))),
        entry("sec7", vec![alpha(), real("theta", "[0, pi/2)"), real("y", POSITIVE)],
            "f(alpha) = prod ((C-c)/(C+c))^((-1)^n), C = cosh(pi cos(theta) sqrt(n^2 alpha^2 + alpha y^2)), c = cos(pi n alpha sin(theta)); f(alpha) = f(1/alpha) tanh(pi y cos(theta)/(2 sqrt(alpha)))/tanh(pi y sqrt(alpha) cos(theta)/2)",
            Target, OBLIQUE_GRID.to_vec(),
            |p, c| pair(oblique_product_sec7(p.real("alpha"), p.real("theta"), p.real("y"), c))),
        entry("sec8", vec![alpha(), real("theta", "[0, pi/2)"), real("y", POSITIVE)],
            "half-integer oblique product with sin(pi (n+1/2) alpha sin(theta)); f(alpha) = f(1/alpha)",
            Target, OBLIQUE_GRID.to_vec(),
            |p, c| pair(half_integer_product_sec8(p.real("alpha"), p.real("theta"), p.real("y"), c))),
        entry("sec8-unit", vec![int("N", ">= 1"), real("theta", "(0, pi/2)"), real("y", POSITIVE)],
            "the half-integer oblique product equals 1 at alpha = sin(theta)/(2N)",
            Target,
            vec![
                "N=1 theta=pi/6 y=1/2", "N=1 theta=pi/4 y=1/2",
                "N=2 theta=pi/6 y=1/2", "N=2 theta=pi/4 y=1/2",
            ],
            |p, c| pair(half_integer_unit_check(p.integer("N"), p.real("theta"), p.real("y"), c))),
        entry("sec9", vec![real("a", POSITIVE)],
            "prod over n in Z of tanh(pi sqrt(a^2 n^2 + 1/4)) / (1 - e^(-(pi/a) sqrt(n^2+1)))^((-1)^n) = exp(C/a), C = 2 int_0^inf ln tanh(pi sqrt(t^2 + 1/4)) dt",
            Target, vec!["a=1/3", "a=1/2", "a=2", "a=3"],
            |p, c| pair(asymmetric_product_sec9(p.real("a"), c))),
        entry("rec10", lattice_params("[2, inf)"),
            "cosh a_j + cos(pi (j-1/2)/n) = cosh b_k + cos(pi (k-1/2)/m) implies prod 2 cosh(m a_j) = prod 2 cosh(n b_k)",
            Exact, vec!["n=1 m=2 x=3", "n=4 m=7 x=2.5", "n=5 m=12 x=4", "n=3 m=3 x=2"],
            |p, c| pair(reciprocity_10(p.integer("n"), p.integer("m"), p.real("x"), c))),
        entry("rec11", lattice_params("(2, inf)"),
            "cosh a_j + cos(pi j/(n+1)) = cosh b_k + cos(pi k/(m+1)) implies prod sinh((m+1) a_j)/sinh(a_j) = prod sinh((n+1) b_k)/sinh(b_k)",
            Exact, vec!["n=2 m=3 x=3", "n=5 m=8 x=2.2", "n=1 m=6 x=2.01"],
            |p, c| pair(reciprocity_11(p.integer("n"), p.integer("m"), p.real("x"), c))),
        entry("rec12", lattice_params("[1, inf)"),
            "cosh(a_j/2) cos(pi (j-1/2)/(2n)) = cosh(b_k/2) cos(pi (k-1/2)/(2m)) implies prod cosh(m a_j) = prod cosh(n b_k)",
            Exact, vec!["n=1 m=2 x=2", "n=3 m=5 x=1.5", "n=4 m=9 x=1"],
            |p, c| pair(reciprocity_12(p.integer("n"), p.integer("m"), p.real("x"), c))),
        entry("rec13", lattice_params("[2, inf)"),
            "cosh(a_j/2) = x/c_j - c_j, c_j = cos(pi (2j-1)/(4n)), implies prod (cosh(m a_j) + cos(m pi (2j-1)/(2n))) = prod (cosh(n b_k) + cos(n pi (2k-1)/(2m)))",
            Exact, vec!["n=2 m=3 x=2.5", "n=4 m=6 x=4", "n=1 m=5 x=2"],
            |p, c| pair(reciprocity_13(p.integer("n"), p.integer("m"), p.real("x"), c))),
        entry("rec14", lattice_params("(2, inf)"),
            "cosh a_j + cos(pi j/(2n)) = cosh b_k + cos(pi k/(2m)) implies prod (tanh(m a_j)/sinh(a_j))^((-1)^j) = prod (tanh(n b_k)/sinh(b_k))^((-1)^k)",
            Exact, vec!["n=2 m=3 x=2.3", "n=3 m=5 x=2.13707783", "n=1 m=4 x=3"],
            |p, c| pair(reciprocity_14(p.integer("n"), p.integer("m"), p.real("x"), c))),
        entry("lemma18", vec![int("m", ">= 1"), real("alpha", "R")],
            "2^(m-1) prod_{j=1}^m (cosh a - cos(pi (j-1/2)/m)) = cosh(m a)",
            Exact, vec!["m=1 alpha=0.6", "m=2 alpha=1", "m=7 alpha=0.83", "m=16 alpha=-2.5"],
            |p, c| pair(cos_product_lemma(p.integer("m"), p.real("alpha"), c))),
        entry("lemma21", vec![int("m", ">= 2"), real("alpha", "R \\ {0}")],
            "2^(m-1) prod_{j=1}^{m-1} (cosh a - cos(pi j/m)) = sinh(m a)/sinh(a)",
            Exact, vec!["m=2 alpha=1", "m=5 alpha=0.4", "m=3 alpha=20", "m=16 alpha=-0.1"],
            |p, c| pair(sin_product_lemma(p.integer("m"), p.real("alpha"), c))),
        entry("lemma-half", vec![int("n", ">= 1")],
            "prod_{j=1}^n cos(pi (j-1/2)/(2n)) = sqrt(2)/2^n",
            Exact, vec!["n=1", "n=2", "n=9", "n=16"],
            |p, c| pair(cos_half_angle_product(p.integer("n"), c))),
        entry("lemma-shift", vec![int("m", ">= 1"), real("alpha", "R"), real("y", "R")],
            "2^(m-1) prod_{j=1}^m [cosh a - cos(y + 2 pi j/m)] = cosh(m a) - cos(m y)",
            Exact, vec!["m=1 alpha=0.7 y=0.3", "m=2 alpha=0.9 y=0", "m=6 alpha=0.7 y=1.1", "m=16 alpha=0.2 y=-2"],
            |p, c| pair(shifted_cos_product_lemma(p.integer("m"), p.real("alpha"), p.real("y"), c))),
        entry("limit15",
            vec![ParamSpec { name: "alpha", kind: ParamKind::Ratio, range: "p/q > 0 with alpha n integer" }, beta(), int("n", ">= 1")],
            "at x = 2 + pi^2 beta^2/(8 n^2), m = alpha n: prod sinh(a_j)^((-1)^j) / prod sinh(b_k)^((-1)^k) equals sqrt(tanh(n acosh(x-1)) tanh(n acosh(x+1)) / (tanh(m acosh(x-1)) tanh(m acosh(x+1))))",
            Exact, vec!["alpha=2 beta=1 n=8", "alpha=2 beta=1 n=16", "alpha=2 beta=1 n=32", "alpha=2 beta=1 n=64"],
            eval_limit15),
    ]
}

pub fn descriptor(identity_id: &str) -> Option<IdentityDescriptor> {
    list_identities().into_iter().find(|d| d.identity_id == identity_id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn registry_contract() {
        let all = list_identities();
        assert!(all.len() >= 18);
        let ids: BTreeSet<_> = all.iter().map(|d| d.identity_id).collect();
        assert_eq!(ids.len(), all.len());
        for d in &all {
            assert!(!d.citation.is_empty());
            assert!(!d.canonical.is_empty());
        }
        let eq2 = descriptor("eq2").unwrap();
        assert_eq!(eq2.params[0].name, "alpha");
        assert_eq!(eq2.params[0].range, "(0, inf)");
        let rec14 = descriptor("rec14").unwrap();
        let names: Vec<_> = rec14.params.iter().map(|p| p.name).collect();
        assert_eq!(names, ["n", "m", "x"]);
        assert_eq!(rec14.params[2].range, "(2, inf)");
    }
}
