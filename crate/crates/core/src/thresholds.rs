//! The four threshold maps and the two constants they determine.
//!
//! Every map is generic over [`Scalar`], so the same code evaluates in
//! exact rationals (used for every decision) or in floats (handy for
//! plotting and quick estimates).

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num};
use serde::{Deserialize, Serialize};

/// Exact rational scalar used for all threshold decisions.
pub type Exact = Ratio<i128>;

pub trait Scalar: Clone + PartialOrd + Num + FromPrimitive + Debug + Display {}

impl<T> Scalar for T where T: Clone + PartialOrd + Num + FromPrimitive + Debug + Display {}

fn lit<T: Scalar>(v: u64) -> T {
    T::from_u64(v).expect("small literal fits every scalar")
}

/// `h(x) = x/2 - 8`.
pub fn h<T: Scalar>(x: T) -> T {
    x / lit(2) - lit(8)
}

/// `g(x) = x/52`.
pub fn g<T: Scalar>(x: T) -> T {
    x / lit(52)
}

/// `f(x) = x/2 - 15`.
pub fn f<T: Scalar>(x: T) -> T {
    x / lit(2) - lit(15)
}

/// `h` applied `l` times.
pub fn h_iter<T: Scalar>(x: T, l: usize) -> T {
    (0..l).fold(x, |acc, _| h(acc))
}

/// Left side of the inequality that fixes `c'`:
/// `g(h²(g(h²(c'/2 - 1)) - 1))`.
pub fn c_prime_lhs<T: Scalar>(cp: T) -> T {
    let c1 = cp / lit(2) - T::one();
    let c3 = g(h_iter(c1, 2));
    g(h_iter(c3 - T::one(), 2))
}

/// The maps together with `c'` and `c`, in scalar `T`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds<T> {
    pub c_prime: T,
    pub c: T,
}

impl<T: Scalar> Thresholds<T> {
    pub fn h(&self, x: T) -> T {
        h(x)
    }

    pub fn g(&self, x: T) -> T {
        g(x)
    }

    pub fn f(&self, x: T) -> T {
        f(x)
    }

    /// `φ(x) = x/(2c')`.
    pub fn phi(&self, x: T) -> T {
        x / (self.c_prime.clone() * lit(2))
    }

    pub fn h_iter(&self, x: T, l: usize) -> T {
        h_iter(x, l)
    }

    /// Left side of the inequality that fixes `c`:
    /// `φ(f(φ(f(c/2 - 1)) - 1))`.
    pub fn c_lhs(&self, c: T) -> T {
        let c1 = c / lit(2) - T::one();
        let c3 = self.phi(f(c1));
        self.phi(f(c3 - T::one()))
    }

    /// `2c'`, the shadow bound of the general case.
    pub fn two_c_prime(&self) -> T {
        self.c_prime.clone() * lit(2)
    }
}

pub type ThresholdsExact = Thresholds<Exact>;
pub type ThresholdsF64 = Thresholds<f64>;

impl ThresholdsExact {
    /// Converts both constants to another scalar. Panics if the target
    /// cannot represent them, which no float or wide rational fails to.
    pub fn to_scalar<T: Scalar>(&self) -> Thresholds<T> {
        let conv = |v: &Exact| T::from_i128(v.to_integer()).expect("constant representable");
        Thresholds { c_prime: conv(&self.c_prime), c: conv(&self.c) }
    }

    pub fn c_prime_u128(&self) -> u128 {
        self.c_prime.to_integer() as u128
    }

    pub fn c_u128(&self) -> u128 {
        self.c.to_integer() as u128
    }

    pub fn c_prime_f64(&self) -> f64 {
        self.c_prime.to_integer() as f64
    }
}

/// Least integer `n ≥ 1` with `pred(n)`, for a monotone `pred`.
fn least_integer(pred: impl Fn(i128) -> bool) -> i128 {
    let mut hi: i128 = 1;
    while !pred(hi) {
        hi *= 2;
    }
    if hi == 1 {
        return 1;
    }
    // pred(lo) is known false
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `c'` and `c` as the least integers satisfying their inequalities,
/// found by exact evaluation and binary search.
pub fn thresholds() -> ThresholdsExact {
    let five = Exact::from_integer(5);
    let c_prime = least_integer(|n| c_prime_lhs(Exact::from_integer(n)) >= five);
    let partial = Thresholds { c_prime: Exact::from_integer(c_prime), c: Exact::from_integer(0) };
    let target = Exact::from_integer(4 * c_prime);
    let c = least_integer(|n| partial.c_lhs(Exact::from_integer(n)) >= target);
    Thresholds { c_prime: Exact::from_integer(c_prime), c: Exact::from_integer(c) }
}
