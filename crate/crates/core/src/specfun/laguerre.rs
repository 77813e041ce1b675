/// Generalized binomial coefficient `C(r, k)` for real `r` and integer
/// `k ≥ 0`, as the falling factorial `r(r-1)⋯(r-k+1)/k!`. This agrees with
/// `Γ(r+1)/(Γ(k+1)Γ(r-k+1))` wherever the latter is defined.
pub fn binomial(r: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    for j in 0..k {
        acc *= (r - j as f64) / (j as f64 + 1.0);
    }
    acc
}

/// Associated Laguerre polynomial `L^λ_n(x) = Σ_{m=0}^{n} (-1)^m C(n+λ, n-m) x^m/m!`.
pub fn laguerre_assoc(n: u32, lambda: f64, x: f64) -> f64 {
    let mut sum = 0.0;
    let mut xm_over_mfact = 1.0;
    for m in 0..=n {
        if m > 0 {
            xm_over_mfact *= x / m as f64;
        }
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binomial(n as f64 + lambda, n - m) * xm_over_mfact;
    }
    sum
}
