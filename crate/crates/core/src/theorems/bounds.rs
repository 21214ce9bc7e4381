use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::AuditReport;
use crate::error::{Error, Result};

/// `C(a, b)` exactly.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::default();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc = acc * BigUint::from(a - i) / BigUint::from(i + 1);
    }
    acc
}

/// `log₂ v` for an arbitrarily large integer.
pub fn log2_big(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().expect("finite below 2^1000").log2();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().expect("64 bits fit");
    top.log2() + shift as f64
}

/// `log₂ C(a, b)` from the exact integer, and the closed-form
/// `b·log(a/b) + (a−b)·log(a/(a−b)) + ½·log(a/(b(a−b)))`.
pub fn log_binomial(a: u64, b: u64) -> Result<(f64, f64)> {
    if b == 0 || b >= a {
        return Err(Error::Param(format!(
            "log_binomial needs 0 < b < a, got ({a}, {b})"
        )));
    }
    let exact = log2_big(&binomial(a, b));
    let (af, bf) = (a as f64, b as f64);
    let cf = af - bf;
    let asymptotic = bf * (af / bf).log2() + cf * (af / cf).log2() + 0.5 * (af / (bf * cf)).log2();
    Ok((exact, asymptotic))
}

/// Lower and upper bounds on the complexity of `m` copies of an `n`-qubit
/// state: `log C(m+N−1, m)` and `4(K_m + L) + 2·log(K_m + L)` with `N = 2ⁿ`.
pub fn multiples_bounds(n: u32, m: u64, k_m: u64) -> Result<(f64, f64)> {
    if n == 0 || m == 0 {
        return Err(Error::Param("n and m must be at least 1".into()));
    }
    if n > 62 {
        return Err(Error::Param(format!("n = {n} is too large")));
    }
    let big_n = 1u64 << n;
    let lower = log2_big(&binomial(m + big_n - 1, m));
    let s = k_m as f64 + lower;
    let upper = 4.0 * s + 2.0 * s.log2();
    Ok((lower, upper))
}

/// Sweeps the multiples bounds and the binomial approximation.
pub fn audit_multiples(
    n_max: u32,
    m_max: u64,
    k_max: u64,
    binom_m_max: u64,
) -> Result<AuditReport> {
    let mut r = AuditReport::new("multiples");
    r.param("n_max", n_max)
        .param("m_max", m_max)
        .param("k_max", k_max)
        .param("binomial_m_max", binom_m_max);
    let mut worst_slack = f64::INFINITY;
    let mut cases = 0u64;
    let mut ok = true;
    for n in 1..=n_max {
        for m in 1..=m_max {
            for k in 0..=k_max {
                let (lo, hi) = multiples_bounds(n, m, k)?;
                ok &= lo <= hi;
                worst_slack = worst_slack.min(hi - lo);
                cases += 1;
            }
        }
    }
    r.check(
        "lower ≤ upper over the sweep",
        format!("{cases} cases"),
        format!("min(upper − lower) = {worst_slack:.4}"),
        ok,
    );
    let m1 = (1..=n_max)
        .all(|n| multiples_bounds(n, 1, 0).is_ok_and(|(lo, _)| (lo - n as f64).abs() < 1e-9));
    r.check(
        "m = 1 lower bound equals n",
        "n",
        if m1 { "n" } else { "differs" },
        m1,
    );

    let mut dev_min = f64::INFINITY;
    let mut dev_max = f64::NEG_INFINITY;
    for m in 1..=binom_m_max {
        let (e, a) = log_binomial(2 * m, m)?;
        dev_min = dev_min.min(a - e);
        dev_max = dev_max.max(a - e);
    }
    r.check(
        "|log C(2m,m) − closed form| bounded",
        "≤ 2",
        format!("[{dev_min:.4}, {dev_max:.4}]"),
        dev_max.abs().max(dev_min.abs()) <= 2.0,
    );
    r.info(
        "closed-form excess as m grows",
        format!(
            "{:.4} (½·log₂(2π) = {:.4})",
            dev_min,
            0.5 * (2.0 * std::f64::consts::PI).log2()
        ),
    );
    r.info(
        "K(x^⊗m | x) ≤ K(x^⊗(m−1)) + c needs a quantum condition",
        "not machine-checked",
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 3), BigUint::from(4u32));
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(7, 0), BigUint::one());
        let (e, _) = log_binomial(4, 3).unwrap();
        assert_eq!(e, 2.0);
        let (e, _) = log_binomial(5, 2).unwrap();
        assert!((e - 10f64.log2()).abs() < 1e-12);
        assert!(log_binomial(3, 3).is_err());
        assert!(log_binomial(3, 0).is_err());
    }

    #[test]
    fn large_binomial_log() {
        let (e, a) = log_binomial(4000, 2000).unwrap();
        let stirling = 4000.0 - 0.5 * (std::f64::consts::PI * 2000.0).log2();
        assert!((e - stirling).abs() < 1e-3);
        assert!((a - e - 0.5 * (2.0 * std::f64::consts::PI).log2()).abs() < 0.01);
    }

    #[test]
    fn multiples_examples() {
        let (lo, hi) = multiples_bounds(1, 3, 0).unwrap();
        assert_eq!(lo, 2.0);
        assert_eq!(hi, 10.0);
        let (lo, hi) = multiples_bounds(2, 2, 0).unwrap();
        assert!((lo - 10f64.log2()).abs() < 1e-12);
        assert!((hi - 16.75).abs() < 0.01);
        assert_eq!(multiples_bounds(3, 1, 0).unwrap().0, 3.0);
    }

    #[test]
    fn sweep_passes() {
        assert!(audit_multiples(8, 8, 16, 1 << 10).unwrap().passed());
    }
}
