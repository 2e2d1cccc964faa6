//! Integer and number-theoretic helpers over `BigInt` / `Rational`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes `≤ n`, ascending.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &p)| p)
        .map(|(i, _)| i as u64)
        .collect()
}

/// `n mod m` in `0..m`.
pub fn mod_u64(n: &BigInt, m: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits in u64")
}

/// Jacobi symbol `(a | n)` for odd positive `n`, by the binary
/// reciprocity algorithm.
pub fn jacobi(a: &BigInt, n: u64) -> i8 {
    assert!(n % 2 == 1, "Jacobi symbol needs an odd modulus");
    let mut a = mod_u64(a, n);
    let mut n = n;
    let mut result = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Legendre symbol of a rational at an odd prime not dividing it, computed
/// as `(num · den | p)`.
pub fn legendre_rational(d: &Rational, p: u64) -> i8 {
    jacobi(&(d.numer() * d.denom()), p)
}

/// `a^((p-1)/2) mod p` mapped to `{-1, 0, 1}`.
pub fn euler_criterion(a: &BigInt, p: u64) -> i8 {
    let pb = BigInt::from(p);
    let r = a.mod_floor(&pb).modpow(&BigInt::from((p - 1) / 2), &pb);
    if r.is_zero() {
        0
    } else if r.is_one() {
        1
    } else {
        debug_assert_eq!(r, &pb - 1u32);
        -1
    }
}

/// Exponent of `p` in nonzero `n`.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `p`-adic valuation of a nonzero rational.
pub fn rational_valuation(d: &Rational, p: u64) -> i64 {
    valuation(d.numer(), p) as i64 - valuation(d.denom(), p) as i64
}

/// Whether the nonzero rational `d` is a square in `ℚ_p`.
pub fn is_square_in_qp(d: &Rational, p: u64) -> bool {
    assert!(!d.is_zero(), "zero is a square but has no unit part");
    if rational_valuation(d, p) % 2 != 0 {
        return false;
    }
    let strip = |n: &BigInt| {
        let pb = BigInt::from(p);
        let mut n = n.clone();
        while (&n % &pb).is_zero() {
            n /= &pb;
        }
        n
    };
    let unit = strip(d.numer()) * strip(d.denom());
    if p == 2 {
        // An odd 2-adic unit is a square iff it is 1 mod 8; the denominator
        // factor is harmless because odd squares are 1 mod 8.
        mod_u64(&unit, 8) == 1
    } else {
        jacobi(&unit, p) == 1
    }
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Exact square root of a rational square.
pub fn rational_sqrt(d: &Rational) -> Option<Rational> {
    if d.is_negative() {
        return None;
    }
    let (n, m) = (d.numer(), d.denom());
    let (rn, rm) = (n.sqrt(), m.sqrt());
    if &rn * &rn == *n && &rm * &rm == *m {
        Some(Rational::new(rn, rm))
    } else {
        None
    }
}

pub fn is_rational_square(d: &Rational) -> bool {
    rational_sqrt(d).is_some()
}

/// `⌊q⌋`
pub fn floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// Smallest-denominator rational in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi, "empty interval");
    if lo.is_positive() {
        simplest_nonnegative(lo, hi)
    } else if hi.is_negative() {
        -simplest_nonnegative(&-hi, &-lo)
    } else {
        Rational::zero()
    }
}

fn simplest_nonnegative(lo: &Rational, hi: &Rational) -> Rational {
    let fl = floor(lo);
    let fl_q = Rational::from_integer(fl.clone());
    if &fl_q == lo {
        return fl_q;
    }
    let next = Rational::from_integer(&fl + 1);
    if &next <= hi {
        return next;
    }
    // lo and hi share the integer part; recurse on the reciprocal fractions.
    let inner = simplest_nonnegative(
        &(Rational::one() / (hi - &fl_q)),
        &(Rational::one() / (lo - &fl_q)),
    );
    fl_q + Rational::one() / inner
}

const SMALL_PRIME_LIMIT: u64 = 1 << 12;
const RHO_STEPS: u64 = 1 << 20;

/// Miller–Rabin with the first twelve prime bases (deterministic below 3.3·10²⁴).
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    const BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n == &BigUint::from(b) {
            return true;
        }
        if (n % b).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let r = n1.trailing_zeros().expect("n > 1");
    let d = &n1 >> r;
    'bases: for &b in &BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..r {
            x = &x * &x % n;
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho; a nontrivial factor of the odd
/// composite `n`, or `None` after the step budget.
fn pollard_rho(n: &BigUint) -> Option<BigUint> {
    for c in 1u32..16 {
        let f = |x: &BigUint| (x * x + c) % n;
        let (mut x, mut y) = (BigUint::from(2u32), BigUint::from(2u32));
        let mut steps = 0;
        loop {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            let g = diff.gcd(n);
            if g.is_one() {
                steps += 1;
                if steps > RHO_STEPS {
                    return None;
                }
                continue;
            }
            if &g != n {
                return Some(g);
            }
            break;
        }
    }
    None
}

/// Prime factorization `(p, e)` ascending, or `None` when a cofactor resists
/// trial division, primality testing and Pollard's rho. `factor(1) = []`.
pub fn factor(n: &BigUint) -> Option<Vec<(BigUint, u32)>> {
    assert!(!n.is_zero(), "cannot factor 0");
    let mut n = n.clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes_up_to(SMALL_PRIME_LIMIT) {
        if BigUint::from(p * p) > n {
            break;
        }
        let mut e = 0;
        while (&n % p).is_zero() {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p.into(), e));
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            match out.iter_mut().find(|(p, _)| p == &m) {
                Some((_, e)) => *e += 1,
                None => out.push((m, 1)),
            }
            continue;
        }
        let d = pollard_rho(&m)?;
        stack.push(&m / &d);
        stack.push(d);
    }
    out.sort();
    Some(out)
}
