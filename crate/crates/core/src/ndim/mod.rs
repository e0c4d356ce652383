//! Negative-dimension integration of one-loop integrals.
//!
//! The Gaussian identity for the Schwinger-exponentiated propagators is
//! expanded on both sides. Matching powers of the Schwinger parameters gives
//! an affine constraint system over the summation variables `p_i` (from the
//! multinomial of the `Σα` power), `q` (the momentum invariant) and `m_i`
//! (the masses). Each consistent choice of solved variables yields a
//! Gamma-prefactor times a hypergeometric sum over the remaining free ones.
//!
//! Normalization is Euclidean: the engine returns
//! `J = ∫dᴰk/π^{D/2} Π_i (k_i² + M_i²)^{−v_i}` up to the global phase
//! `(−1)^{D/2}` carried in the [`PhaseTag`].
//!
//! The momentum scale couples propagators 0 and 1.

mod eval;
mod lin;
pub mod oracle;

pub use eval::{
    converges, eval_massive_bubble, eval_massless_bubble, eval_spec, evaluate_descriptor, horn_exponent,
    validate_massive_bubble,
};
pub use lin::{Aff, Lin, Q, MAX_FREE, MAX_PROPS};

use crate::error::{Error, Result};
use crate::specfun::Dimension;
use crate::tol::PhaseTag;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

/// One-loop integral with powers, masses and momentum scales.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopIntegralSpec {
    /// Propagator powers v_i.
    pub powers: Vec<f64>,
    /// Masses M_i², zero for massless lines.
    pub masses2: Vec<f64>,
    /// Momentum invariants Q², at most one.
    pub scales2: Vec<f64>,
    /// Spacetime dimension.
    pub dimension: Dimension,
}

impl LoopIntegralSpec {
    /// Checked constructor.
    pub fn new(powers: Vec<f64>, masses2: Vec<f64>, scales2: Vec<f64>, dimension: Dimension) -> Result<Self> {
        let s = LoopIntegralSpec { powers, masses2, scales2, dimension };
        s.validate()?;
        Ok(s)
    }

    /// Tadpole (k² + M²)^{−v}.
    pub fn tadpole(d: f64, v: f64, m2: f64) -> Result<Self> {
        Self::new(alloc::vec![v], alloc::vec![m2], Vec::new(), Dimension::real(d))
    }

    /// Bubble with two masses.
    pub fn bubble(d: f64, v1: f64, v2: f64, q2: f64, m1_2: f64, m2_2: f64) -> Result<Self> {
        Self::new(alloc::vec![v1, v2], alloc::vec![m1_2, m2_2], alloc::vec![q2], Dimension::real(d))
    }

    /// Shape and sign checks; accepts n ≤ 3, q ≤ 1, m ≤ 2.
    pub fn validate(&self) -> Result<()> {
        let n = self.powers.len();
        if n == 0 || n > MAX_PROPS {
            return Err(Error::Unsupported(format!("{n} propagators")));
        }
        if self.masses2.len() != n {
            return Err(Error::Domain(format!("{} masses for {n} propagators", self.masses2.len())));
        }
        if self.scales2.len() > 1 || (n == 1 && !self.scales2.is_empty()) {
            return Err(Error::Unsupported(format!("{} momentum scales for {n} propagators", self.scales2.len())));
        }
        if self.m_count() > 2 {
            return Err(Error::Unsupported(format!("{} massive lines", self.m_count())));
        }
        if self.masses2.iter().any(|m| !(*m >= 0.0 && m.is_finite())) {
            return Err(Error::Domain(String::from("masses2 must be finite and non-negative")));
        }
        if self.scales2.iter().any(|q| !(*q > 0.0 && q.is_finite())) {
            return Err(Error::Domain(String::from("scales2 must be finite and positive")));
        }
        if self.powers.iter().any(|v| !v.is_finite()) || !self.dimension.value.re.is_finite() {
            return Err(Error::Domain(String::from("powers and dimension must be finite")));
        }
        Ok(())
    }

    /// n.
    pub fn n_propagators(&self) -> usize {
        self.powers.len()
    }

    /// Number of momentum scales.
    pub fn q_count(&self) -> usize {
        self.scales2.len()
    }

    /// Number of massive lines.
    pub fn m_count(&self) -> usize {
        self.masses2.iter().filter(|m| **m != 0.0).count()
    }

    /// Value of a scale.
    pub fn scale_value(&self, s: Scale) -> f64 {
        match s {
            Scale::Momentum(k) => self.scales2[k],
            Scale::Mass(i) => self.masses2[i],
        }
    }
}

/// A squared scale of the integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    /// Q_k².
    Momentum(usize),
    /// M_i² of propagator i.
    Mass(usize),
}

impl Scale {
    /// "Q2" or "M1_2" style label, 1-based.
    pub fn label(&self) -> String {
        match self {
            Scale::Momentum(_) => String::from("Q2"),
            Scale::Mass(i) => format!("M{}_2", i + 1),
        }
    }
}

/// A summation variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    /// Multinomial index of propagator i.
    P(usize),
    /// Momentum-scale index.
    Q(usize),
    /// Mass index of propagator i.
    M(usize),
}

impl Var {
    /// 1-based name.
    pub fn name(&self) -> String {
        match self {
            Var::P(i) => format!("p{}", i + 1),
            Var::Q(k) => format!("q{}", k + 1),
            Var::M(i) => format!("m{}", i + 1),
        }
    }

    /// The scale raised to this variable, if any.
    pub fn scale(&self) -> Option<Scale> {
        match self {
            Var::P(_) => None,
            Var::Q(k) => Some(Scale::Momentum(*k)),
            Var::M(i) => Some(Scale::Mass(*i)),
        }
    }
}

/// Rows `Σ_x a_{r,x} x = rhs_r`: n power rows and the dimension row.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSystem {
    /// Propagator count.
    pub n: usize,
    /// Variables in the order p…, q…, m….
    pub variables: Vec<Var>,
    /// Coefficient matrix, one row per equation.
    pub rows: Vec<Vec<Q>>,
    /// Right-hand sides.
    pub rhs: Vec<Lin>,
}

impl ConstraintSystem {
    /// Renders row r as "q1 + p1 + m1 = -v1".
    pub fn row_string(&self, r: usize) -> String {
        let mut s = String::new();
        for (x, a) in self.variables.iter().zip(&self.rows[r]) {
            if a.is_zero() {
                continue;
            }
            if !s.is_empty() {
                s.push_str(if a.is_negative() { " - " } else { " + " });
            } else if a.is_negative() {
                s.push('-');
            }
            if a.abs() != Q::one() {
                s.push_str(&format!("{}", a.abs()));
            }
            s.push_str(&x.name());
        }
        format!("{s} = {}", self.rhs[r])
    }
}

/// Builds the power-matching rows and the dimension row.
pub fn build_system(spec: &LoopIntegralSpec) -> ConstraintSystem {
    let n = spec.n_propagators();
    let mut variables: Vec<Var> = (0..n).map(Var::P).collect();
    variables.extend((0..spec.q_count()).map(Var::Q));
    variables.extend((0..n).filter(|i| spec.masses2[*i] != 0.0).map(Var::M));
    let mut rows = Vec::with_capacity(n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    for i in 0..n {
        let row = variables
            .iter()
            .map(|x| {
                let hit = match x {
                    Var::P(j) | Var::M(j) => *j == i,
                    Var::Q(_) => i < 2,
                };
                if hit { Q::one() } else { Q::zero() }
            })
            .collect();
        rows.push(row);
        rhs.push(-Lin::power(i));
    }
    rows.push(variables.iter().map(|x| if matches!(x, Var::M(_)) { Q::zero() } else { Q::one() }).collect());
    rhs.push(-Lin::half_d());
    ConstraintSystem { n, variables, rows, rhs }
}

/// Solved variables as affine functions of D, the powers and the free indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// Position in the lexicographic subset enumeration.
    pub index: usize,
    /// Indices into `variables` of the solved set.
    pub solved: Vec<usize>,
    /// Indices into `variables` of the free set, in order.
    pub free: Vec<usize>,
    /// Value of every variable.
    pub values: Vec<Aff>,
}

impl Solution {
    /// Names of the solved variables, e.g. "{p1,p2,q1}".
    pub fn label(&self, system: &ConstraintSystem) -> String {
        let names: Vec<String> = self.solved.iter().map(|i| system.variables[*i].name()).collect();
        format!("{{{}}}", names.join(","))
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Solves the system for every (n+1)-subset; singular subsets are skipped.
pub fn enumerate_solutions(system: &ConstraintSystem) -> Vec<Solution> {
    let nv = system.variables.len();
    let k = system.n + 1;
    let mut out = Vec::new();
    for (index, subset) in combinations(nv, k).into_iter().enumerate() {
        let free: Vec<usize> = (0..nv).filter(|i| !subset.contains(i)).collect();
        if free.len() > MAX_FREE {
            continue;
        }
        let mut a: Vec<Vec<Q>> = system.rows.iter().map(|r| subset.iter().map(|c| r[*c]).collect()).collect();
        let mut b: Vec<Aff> = system
            .rows
            .iter()
            .zip(&system.rhs)
            .map(|(r, rhs)| {
                free.iter().enumerate().fold(Aff::of(*rhs), |acc, (fi, c)| acc - Aff::index(fi) * r[*c])
            })
            .collect();
        if !gauss_jordan(&mut a, &mut b) {
            continue;
        }
        let mut values = alloc::vec![Aff::of(Lin::zero()); nv];
        for (r, c) in subset.iter().enumerate() {
            values[*c] = b[r];
        }
        for (fi, c) in free.iter().enumerate() {
            values[*c] = Aff::index(fi);
        }
        out.push(Solution { index, solved: subset, free, values });
    }
    out
}

fn gauss_jordan(a: &mut [Vec<Q>], b: &mut [Aff]) -> bool {
    let n = a.len();
    for col in 0..n {
        let Some(piv) = (col..n).find(|r| !a[*r][col].is_zero()) else {
            return false;
        };
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = Q::one() / a[col][col];
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        b[col] = b[col] * inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
                b[r] = b[r] - b[col] * f;
            }
        }
    }
    true
}

/// Pochhammer symbol `(base)_{coef·n}` in the numerator or denominator of the summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PochhammerRole {
    /// Base.
    pub base: Lin,
    /// Coefficients of the free indices.
    pub coef: [i64; MAX_FREE],
    /// Numerator when true.
    pub numerator: bool,
}

/// Scale raised to an index-free power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScalePower {
    /// Which scale.
    pub scale: Scale,
    /// Exponent.
    pub exponent: Lin,
}

/// Argument of one free index: sign × Π scale^power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesArgument {
    /// ±1.
    pub sign: i32,
    /// Integer powers of the scales.
    pub powers: Vec<(Scale, i64)>,
}

impl SeriesArgument {
    /// Numeric value at the spec's scales.
    pub fn value(&self, spec: &LoopIntegralSpec) -> f64 {
        let mut x = self.sign as f64;
        for (s, p) in &self.powers {
            x *= num_traits::Float::powi(spec.scale_value(*s), *p as i32);
        }
        x
    }

    /// "-M1_2/Q2" style label.
    pub fn label(&self) -> String {
        let num: Vec<String> =
            self.powers.iter().filter(|(_, p)| *p > 0).map(|(s, p)| pow_label(s, *p)).collect();
        let den: Vec<String> =
            self.powers.iter().filter(|(_, p)| *p < 0).map(|(s, p)| pow_label(s, -*p)).collect();
        let mut out = String::from(if self.sign < 0 { "-" } else { "" });
        out.push_str(&if num.is_empty() { String::from("1") } else { num.join("*") });
        if !den.is_empty() {
            out.push('/');
            out.push_str(&den.join("/"));
        }
        out
    }
}

fn pow_label(s: &Scale, p: i64) -> String {
    if p == 1 { s.label() } else { format!("{}^{p}", s.label()) }
}

/// PRE × SUM form of one solution.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperSeriesDescriptor {
    /// Solution label such as "{p1,p2,q1}".
    pub label: String,
    /// Names of the free indices.
    pub free: Vec<String>,
    /// Solved variables with their affine values.
    pub assignments: Vec<(String, Aff)>,
    /// Flip exponent, D/2 by construction.
    pub theta: Lin,
    /// Global sign marker (−1)^{D/2}.
    pub phase: PhaseTag,
    /// Flipped numerator Gamma arguments.
    pub gamma_num: Vec<Lin>,
    /// Flipped denominator Gamma arguments.
    pub gamma_den: Vec<Lin>,
    /// Finite ratio left by paired symbolic poles.
    pub pole_ratio: f64,
    /// More constant poles below than above the bar.
    pub symbolic_zero: bool,
    /// More constant poles above than below the bar.
    pub symbolic_pole: bool,
    /// Index-free scale powers.
    pub scale_powers: Vec<ScalePower>,
    /// Pochhammer symbols of the summand.
    pub sum: Vec<PochhammerRole>,
    /// One argument per free index.
    pub arguments: Vec<SeriesArgument>,
}

/// Parameters of an Appell F4 identification.
#[derive(Debug, Clone, PartialEq)]
pub struct F4Form {
    /// α and β.
    pub numerator: [Lin; 2],
    /// γ₁ and γ₂.
    pub denominator: [Lin; 2],
}

impl HyperSeriesDescriptor {
    /// Recognises Σ (α)_{m+n}(β)_{m+n}/((γ₁)_m(γ₂)_n m! n!) x^m y^n.
    pub fn as_appell_f4(&self) -> Option<F4Form> {
        if self.free.len() != 2 {
            return None;
        }
        let mut num = Vec::new();
        let mut g = [None, None];
        let mut fact = [0, 0];
        for r in &self.sum {
            match (r.numerator, r.coef) {
                (true, [1, 1]) => num.push(r.base),
                (false, [1, 0]) | (false, [0, 1]) => {
                    let k = if r.coef[0] == 1 { 0 } else { 1 };
                    if r.base == Lin::int(1) && fact[k] == 0 {
                        fact[k] = 1;
                    } else if g[k].is_none() {
                        g[k] = Some(r.base);
                    } else if r.base == Lin::int(1) {
                        fact[k] += 1;
                    } else {
                        return None;
                    }
                }
                _ => return None,
            }
        }
        match (num.as_slice(), g, fact) {
            ([a, b], [Some(c1), Some(c2)], [1, 1]) => Some(F4Form { numerator: [*a, *b], denominator: [c1, c2] }),
            _ => None,
        }
    }
}

/// Substitutes a solution into the template, forms Pochhammer symbols and flips the prefactor.
pub fn to_descriptor(sol: &Solution, system: &ConstraintSystem) -> Result<HyperSeriesDescriptor> {
    let n = system.n;
    let one = Aff::of(Lin::int(1));
    let mut num: Vec<Aff> = (0..n).map(|i| Aff::of(Lin::int(1) - Lin::power(i))).collect();
    let sum_p = system
        .variables
        .iter()
        .zip(&sol.values)
        .filter(|(x, _)| matches!(x, Var::P(_)))
        .fold(one, |acc, (_, v)| acc + *v);
    num.push(sum_p);
    let den: Vec<Aff> = sol.values.iter().map(|v| one + *v).collect();

    let mut pre_num = Vec::new();
    let mut pre_den = Vec::new();
    let mut sum = Vec::new();
    let mut sign_exp = [0i64; MAX_FREE];
    let mut push = |a: &Aff, numerator: bool, pre: &mut Vec<Lin>| -> Result<()> {
        let coef = a
            .int_free()
            .filter(|c| c.iter().all(|x| x.abs() <= 1))
            .ok_or_else(|| Error::Unsupported(format!("free-index coefficients {:?}", a.free)))?;
        pre.push(a.lin);
        if coef.iter().all(|c| *c == 0) {
            return Ok(());
        }
        if coef.iter().all(|c| *c <= 0) {
            for (s, c) in sign_exp.iter_mut().zip(coef) {
                *s += -c;
            }
            sum.push(PochhammerRole { base: Lin::int(1) - a.lin, coef: coef.map(|c| -c), numerator: !numerator });
        } else {
            sum.push(PochhammerRole { base: a.lin, coef, numerator });
        }
        Ok(())
    };
    for a in &num {
        push(a, true, &mut pre_num)?;
    }
    for (i, a) in den.iter().enumerate() {
        let mut tmp = Vec::new();
        push(a, false, &mut tmp)?;
        if !sol.free.contains(&i) {
            pre_den.extend(tmp);
        }
    }

    let sa = pre_num.iter().fold(Lin::zero(), |acc, x| acc + *x);
    let sb = pre_den.iter().fold(Lin::zero(), |acc, x| acc + *x);
    let theta = sb - sa;
    if theta != Lin::half_d() || pre_num.len() != pre_den.len() {
        return Err(Error::ThetaMismatch(format!("{} gives theta = {theta}", sol.label(system))));
    }
    let mut gamma_num: Vec<Lin> = pre_den.iter().map(|b| Lin::int(1) - *b).collect();
    let mut gamma_den: Vec<Lin> = pre_num.iter().map(|a| Lin::int(1) - *a).collect();
    let mut i = 0;
    while i < gamma_num.len() {
        if let Some(j) = gamma_den.iter().position(|d| *d == gamma_num[i]) {
            gamma_num.remove(i);
            gamma_den.remove(j);
        } else {
            i += 1;
        }
    }
    let mut pn: Vec<i64> = gamma_num.iter().filter(|l| l.is_pole()).map(|l| -l.c.to_integer()).collect();
    let mut pd: Vec<i64> = gamma_den.iter().filter(|l| l.is_pole()).map(|l| -l.c.to_integer()).collect();
    let symbolic_zero = pd.len() > pn.len();
    let symbolic_pole = pn.len() > pd.len();
    let mut pole_ratio = 1.0;
    if pn.len() == pd.len() && !pn.is_empty() {
        // Γ(−k)/Γ(−j) → (−1)^{j−k} j!/k! under a common shift
        pn.sort_unstable();
        pd.sort_unstable();
        for (k, j) in pn.iter().zip(&pd) {
            let mut r = if (j - k).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            for t in 1..=*j {
                r *= t as f64;
            }
            for t in 1..=*k {
                r /= t as f64;
            }
            pole_ratio *= r;
        }
        gamma_num.retain(|l| !l.is_pole());
        gamma_den.retain(|l| !l.is_pole());
    }

    let mut scale_powers = Vec::new();
    let mut arg_powers: Vec<Vec<(Scale, i64)>> = alloc::vec![Vec::new(); sol.free.len()];
    for (x, v) in system.variables.iter().zip(&sol.values) {
        let Some(s) = x.scale() else { continue };
        if v.lin != Lin::zero() {
            scale_powers.push(ScalePower { scale: s, exponent: v.lin });
        }
        let coef = v.int_free().unwrap_or([0; MAX_FREE]);
        for (f, c) in coef.iter().enumerate().take(sol.free.len()) {
            if *c != 0 {
                arg_powers[f].push((s, *c));
            }
        }
    }
    let arguments = arg_powers
        .into_iter()
        .enumerate()
        .map(|(f, powers)| SeriesArgument { sign: if sign_exp[f] % 2 == 0 { 1 } else { -1 }, powers })
        .collect();

    Ok(HyperSeriesDescriptor {
        label: sol.label(system),
        free: sol.free.iter().map(|i| system.variables[*i].name()).collect(),
        assignments: sol.solved.iter().map(|i| (system.variables[*i].name(), sol.values[*i])).collect(),
        theta,
        phase: PhaseTag::half_dim(),
        gamma_num,
        gamma_den,
        pole_ratio,
        symbolic_zero,
        symbolic_pole,
        scale_powers,
        sum,
        arguments,
    })
}

/// Every solution of the spec together with its descriptor.
pub fn descriptors(spec: &LoopIntegralSpec) -> Result<Vec<HyperSeriesDescriptor>> {
    let sys = build_system(spec);
    enumerate_solutions(&sys).iter().map(|s| to_descriptor(s, &sys)).collect()
}
