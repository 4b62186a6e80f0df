/// Call option `(x − a·u)⁺` on payoff `x` with strike vector `u` and
/// exercise price `a`.
pub fn call_option(x: &[f64], u: &[f64], a: f64) -> Vec<f64> {
    assert_eq!(x.len(), u.len(), "payoff and strike vector differ in length");
    x.iter().zip(u).map(|(xi, ui)| (xi - a * ui).max(0.0)).collect()
}

/// Put option `(a·u − x)⁺`.
pub fn put_option(x: &[f64], u: &[f64], a: f64) -> Vec<f64> {
    assert_eq!(x.len(), u.len(), "payoff and strike vector differ in length");
    x.iter().zip(u).map(|(xi, ui)| (a * ui - xi).max(0.0)).collect()
}

pub fn positive_part(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| v.max(0.0)).collect()
}

pub fn negative_part(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| (-v).max(0.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_price_call_is_positive_part() {
        let x = [1.0, -2.0, 3.0];
        assert_eq!(call_option(&x, &[5.0, 5.0, 5.0], 0.0), positive_part(&x));
    }

    #[test]
    fn out_of_the_money() {
        assert_eq!(call_option(&[1.0, -2.0], &[1.0, 1.0], 1.0), vec![0.0, 0.0]);
    }

    #[test]
    fn put_is_call_on_negated_inputs() {
        let x = [0.3, -1.2, 4.0];
        let u = [1.0, 2.0, -0.5];
        let nx: Vec<f64> = x.iter().map(|v| -v).collect();
        let nu: Vec<f64> = u.iter().map(|v| -v).collect();
        assert_eq!(put_option(&x, &u, 1.5), call_option(&nx, &nu, 1.5));
    }

    #[test]
    fn parts_recombine() {
        let x = [1.0, -1.0, 0.0];
        let diff: Vec<f64> = positive_part(&x)
            .iter()
            .zip(negative_part(&x))
            .map(|(p, n)| p - n)
            .collect();
        assert_eq!(diff, x.to_vec());
    }
}
