/// Default constant of the sublevel estimate, `c_m = 2^m·m`.
pub fn default_cm(m: u32) -> f64 {
    2f64.powi(m as i32) * m as f64
}

/// `(c_m/ξ^{1/m})·(M·(b−a)/ξ + 1)·η^{1/m}` bounding `meas{|f| ≤ η}` for a
/// `(ξ, m)`-non-degenerate `f` with `‖f‖_{C^{m+1}} ≤ M`.
pub fn sublevel_bound(xi: f64, m: u32, big_m: f64, length: f64, eta: f64, cm: f64) -> f64 {
    let r = 1.0 / m as f64;
    cm / xi.powf(r) * (big_m * length / xi + 1.0) * eta.powf(r)
}

/// Measure of `{|f| ≤ η}` from values on a uniform midpoint grid of an interval of `length`.
pub fn empirical_sublevel(samples: &[f64], length: f64, eta: f64) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    let hits = samples.iter().filter(|v| v.abs() <= eta).count();
    length * hits as f64 / samples.len() as f64
}

/// [`empirical_sublevel`] of `f` sampled at `n` midpoints of `[a, b]`.
pub fn empirical_sublevel_fn<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize, eta: f64) -> f64 {
    let h = (b - a) / n as f64;
    let samples: Vec<f64> = (0..n).map(|i| f(a + (i as f64 + 0.5) * h)).collect();
    empirical_sublevel(&samples, b - a, eta)
}
