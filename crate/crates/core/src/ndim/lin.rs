//! Affine forms c + d·D + Σ v_i·v_i with rational coefficients, and their
//! extension by integer multiples of up to two free summation indices.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rational scalar.
pub type Q = Rational64;

/// Maximum propagator count.
pub const MAX_PROPS: usize = 3;
/// Maximum number of free summation indices.
pub const MAX_FREE: usize = 2;

/// c + d·D + Σ_i v_i·v_i.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lin {
    /// Constant.
    pub c: Q,
    /// Coefficient of D.
    pub d: Q,
    /// Coefficients of the propagator powers.
    pub v: [Q; MAX_PROPS],
}

impl Lin {
    /// 0.
    pub fn zero() -> Self {
        Lin { c: Q::zero(), d: Q::zero(), v: [Q::zero(); MAX_PROPS] }
    }

    /// Integer constant.
    pub fn int(k: i64) -> Self {
        Lin { c: Q::from_integer(k), ..Lin::zero() }
    }

    /// D/2.
    pub fn half_d() -> Self {
        Lin { d: Q::new(1, 2), ..Lin::zero() }
    }

    /// v_i.
    pub fn power(i: usize) -> Self {
        let mut l = Lin::zero();
        l.v[i] = Q::one();
        l
    }

    /// Numeric value.
    pub fn eval(&self, d: f64, v: &[f64]) -> f64 {
        let f = |q: Q| q.to_f64().unwrap_or(f64::NAN);
        let mut s = f(self.c) + f(self.d) * d;
        for (i, vi) in v.iter().enumerate().take(MAX_PROPS) {
            s += f(self.v[i]) * vi;
        }
        s
    }

    /// Independent of D and the powers.
    pub fn is_constant(&self) -> bool {
        self.d.is_zero() && self.v.iter().all(|x| x.is_zero())
    }

    /// A constant non-positive integer, i.e. a symbolic Gamma pole.
    pub fn is_pole(&self) -> bool {
        self.is_constant() && self.c.is_integer() && self.c <= Q::zero()
    }

    /// Scales by a rational.
    pub fn scale(self, k: Q) -> Self {
        Lin { c: self.c * k, d: self.d * k, v: self.v.map(|x| x * k) }
    }
}

impl Add for Lin {
    type Output = Lin;
    fn add(self, o: Lin) -> Lin {
        let mut v = self.v;
        for (a, b) in v.iter_mut().zip(o.v) {
            *a += b;
        }
        Lin { c: self.c + o.c, d: self.d + o.d, v }
    }
}

impl Sub for Lin {
    type Output = Lin;
    fn sub(self, o: Lin) -> Lin {
        self + (-o)
    }
}

impl Neg for Lin {
    type Output = Lin;
    fn neg(self) -> Lin {
        self.scale(-Q::one())
    }
}

fn fmt_term(out: &mut String, coef: Q, name: &str, first: &mut bool) {
    use core::fmt::Write;
    if coef.is_zero() {
        return;
    }
    let neg = coef.is_negative();
    let a = coef.abs();
    if *first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    *first = false;
    if name.is_empty() {
        let _ = write!(out, "{a}");
    } else if a == Q::one() {
        out.push_str(name);
    } else if a.is_integer() {
        let _ = write!(out, "{a}{name}");
    } else if *a.numer() == 1 {
        let _ = write!(out, "{name}/{}", a.denom());
    } else {
        let _ = write!(out, "({a}){name}");
    }
}

impl fmt::Display for Lin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let mut first = true;
        fmt_term(&mut s, self.c, "", &mut first);
        for (i, vi) in self.v.iter().enumerate() {
            let name = alloc::format!("v{}", i + 1);
            fmt_term(&mut s, *vi, &name, &mut first);
        }
        fmt_term(&mut s, self.d, "D", &mut first);
        if first {
            s.push('0');
        }
        f.write_str(&s)
    }
}

/// Lin plus rational multiples of the free indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Aff {
    /// Index-free part.
    pub lin: Lin,
    /// Coefficients of the free indices.
    pub free: [Q; MAX_FREE],
}

impl Aff {
    /// Pure Lin.
    pub fn of(lin: Lin) -> Self {
        Aff { lin, free: [Q::zero(); MAX_FREE] }
    }

    /// The k-th free index.
    pub fn index(k: usize) -> Self {
        let mut a = Aff::of(Lin::zero());
        a.free[k] = Q::one();
        a
    }

    /// Scales by a rational.
    pub fn scale(self, k: Q) -> Self {
        Aff { lin: self.lin.scale(k), free: self.free.map(|x| x * k) }
    }

    /// Integer free coefficients, if every one is integral.
    pub fn int_free(&self) -> Option<[i64; MAX_FREE]> {
        let mut out = [0; MAX_FREE];
        for (o, q) in out.iter_mut().zip(self.free) {
            if !q.is_integer() {
                return None;
            }
            *o = q.to_integer();
        }
        Some(out)
    }
}

impl Add for Aff {
    type Output = Aff;
    fn add(self, o: Aff) -> Aff {
        Aff { lin: self.lin + o.lin, free: [self.free[0] + o.free[0], self.free[1] + o.free[1]] }
    }
}

impl Sub for Aff {
    type Output = Aff;
    fn sub(self, o: Aff) -> Aff {
        self + o.scale(-Q::one())
    }
}

impl Mul<Q> for Aff {
    type Output = Aff;
    fn mul(self, k: Q) -> Aff {
        self.scale(k)
    }
}
