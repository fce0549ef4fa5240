use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigUint;

use super::halfint::HalfInt;

const LN_TABLE_LEN: usize = 4097;

/// `ln(n!)` for n below the table size, accumulated with compensated summation.
static LN_FACTORIAL: LazyLock<Vec<f64>> = LazyLock::new(|| {
    let mut table = Vec::with_capacity(LN_TABLE_LEN);
    let (mut sum, mut carry) = (0.0f64, 0.0f64);
    table.push(0.0);
    for k in 1..LN_TABLE_LEN {
        let y = (k as f64).ln() - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
        table.push(sum);
    }
    table
});

/// Natural log of `n!`.
pub fn ln_factorial(n: u64) -> f64 {
    if (n as usize) < LN_TABLE_LEN {
        return LN_FACTORIAL[n as usize];
    }
    // Stirling series; the truncation error is far below 1 ulp past the table.
    let x = n as f64 + 1.0;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0)))
}

/// Natural log of the double factorial `n!!` (with `0!! = (-1)!! = 1`).
pub fn ln_double_factorial(n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if n % 2 == 0 {
        let k = n / 2;
        k as f64 * std::f64::consts::LN_2 + ln_factorial(k)
    } else {
        let k = (n + 1) / 2;
        ln_factorial(2 * k) - k as f64 * std::f64::consts::LN_2 - ln_factorial(k)
    }
}

/// `(2j)!! / (2j - 1)!!`, evaluated in log space.
pub fn double_factorial_ratio(j: HalfInt) -> f64 {
    let n = j.twice().max(0) as u64;
    let lower = if n == 0 { 0.0 } else { ln_double_factorial(n - 1) };
    (ln_double_factorial(n) - lower).exp()
}

/// Amplitude of the interference fringe of a spin cat state,
/// `N_j = sqrt((4j+1)! / (2j+1)) / (2^{2j} (2j)!)`.
pub fn nj_constant(j: HalfInt) -> f64 {
    ln_nj_constant(j).exp()
}

pub fn ln_nj_constant(j: HalfInt) -> f64 {
    let n = j.twice() as u64;
    -(n as f64) * std::f64::consts::LN_2 - ln_factorial(n)
        + 0.5 * (ln_factorial(2 * n + 1) - ((n + 1) as f64).ln())
}

static BIG_FACTORIALS: LazyLock<RwLock<Arc<Vec<BigUint>>>> =
    LazyLock::new(|| RwLock::new(Arc::new(vec![BigUint::from(1u32)])));

/// Shared table of exact factorials `0!, 1!, ..., n!` (at least).
pub fn big_factorials(n: usize) -> Arc<Vec<BigUint>> {
    {
        let table = BIG_FACTORIALS.read().expect("factorial table poisoned");
        if table.len() > n {
            return Arc::clone(&table);
        }
    }
    let mut guard = BIG_FACTORIALS.write().expect("factorial table poisoned");
    if guard.len() <= n {
        let mut extended: Vec<BigUint> = guard.as_ref().clone();
        let target = (n + 1).max(2 * extended.len());
        while extended.len() < target {
            let k = extended.len();
            let next = &extended[k - 1] * BigUint::from(k);
            extended.push(next);
        }
        *guard = Arc::new(extended);
    }
    Arc::clone(&guard)
}
