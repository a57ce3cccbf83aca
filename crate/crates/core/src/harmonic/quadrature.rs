//! Composite Gauss-Legendre rules.

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "rule needs at least one node");
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * d * d);
        xs[i] = -x;
        xs[n - 1 - i] = x;
        ws[i] = w;
        ws[n - 1 - i] = w;
    }
    (xs, ws)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A composite rule: `panels` equal panels on `[a, b]` with `order` nodes each.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn composite(a: f64, b: f64, panels: usize, order: usize) -> Self {
        let (xs, ws) = gauss_legendre(order);
        Self::composite_with(a, b, panels, &xs, &ws)
    }

    /// Same as [`Rule::composite`] with a precomputed base rule.
    pub fn composite_with(a: f64, b: f64, panels: usize, xs: &[f64], ws: &[f64]) -> Self {
        let panels = panels.max(1);
        let h = (b - a) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * xs.len());
        let mut weights = Vec::with_capacity(panels * xs.len());
        for p in 0..panels {
            let mid = a + h * (p as f64 + 0.5);
            for (x, w) in xs.iter().zip(ws) {
                nodes.push(mid + 0.5 * h * x);
                weights.push(0.5 * h * w);
            }
        }
        Rule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Shifts every node by `d`.
    pub fn shifted(&self, d: f64) -> Self {
        Rule {
            nodes: self.nodes.iter().map(|x| x + d).collect(),
            weights: self.weights.clone(),
        }
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, w)| w * f(x)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_point_rule() {
        let (xs, ws) = gauss_legendre(5);
        assert!((xs[4] - 0.906_179_845_938_664).abs() < 1e-15);
        assert!((ws[4] - 0.236_926_885_056_189_1).abs() < 1e-15);
        assert!((ws[2] - 128.0 / 225.0).abs() < 1e-15);
        assert!((ws.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn exact_for_low_degree() {
        for n in 1..20 {
            let r = Rule::composite(-1.0, 2.0, 1, n);
            for d in 0..2 * n {
                let exact = (2f64.powi(d as i32 + 1) - (-1f64).powi(d as i32 + 1)) / (d as f64 + 1.0);
                let got = r.integrate(|x| x.powi(d as i32));
                assert!((got - exact).abs() < 1e-11 * exact.abs().max(1.0), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn composite_gaussian() {
        let r = Rule::composite(-9.0, 9.0, 16, 12);
        let got = r.integrate(|x| (-x * x / 2.0).exp());
        assert!((got - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-14);
    }
}
