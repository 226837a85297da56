use num_traits::Float;

fn c<T: Float>(v: f64) -> T {
    T::from(v).expect("constant representable")
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma<T: Float>(x: T) -> T {
    if x < c(0.5) {
        // reflection
        let pi: T = c(std::f64::consts::PI);
        return (pi / (pi * x).sin()).ln() - ln_gamma(T::one() - x);
    }
    let x = x - T::one();
    let mut acc: T = c(LANCZOS[0]);
    for (i, coef) in LANCZOS.iter().enumerate().skip(1) {
        acc = acc + c::<T>(*coef) / (x + c(i as f64));
    }
    let t = x + c(LANCZOS_G + 0.5);
    let half_ln_two_pi: T = c(0.918_938_533_204_672_8);
    half_ln_two_pi + (x + c(0.5)) * t.ln() - t + acc.ln()
}

/// Continued fraction for the incomplete beta (modified Lentz).
fn beta_continued_fraction<T: Float>(a: T, b: T, x: T) -> T {
    let tiny: T = c(1e-300_f64.max(T::min_positive_value().to_f64().unwrap_or(1e-300)));
    let eps: T = T::epsilon();
    let one = T::one();
    let qab = a + b;
    let qap = a + one;
    let qam = a - one;
    let mut cc = one;
    let mut d = one - qab * x / qap;
    if d.abs() < tiny {
        d = tiny;
    }
    d = one / d;
    let mut h = d;
    for m in 1..=500 {
        let m: T = c(m as f64);
        let m2 = m + m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = one + aa * d;
        if d.abs() < tiny {
            d = tiny;
        }
        cc = one + aa / cc;
        if cc.abs() < tiny {
            cc = tiny;
        }
        d = one / d;
        h = h * d * cc;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = one + aa * d;
        if d.abs() < tiny {
            d = tiny;
        }
        cc = one + aa / cc;
        if cc.abs() < tiny {
            cc = tiny;
        }
        d = one / d;
        let del = d * cc;
        h = h * del;
        if (del - one).abs() < eps {
            break;
        }
    }
    h
}

/// Regularized incomplete beta `I_x(a, b)` for `a, b > 0`, `x ∈ [0, 1]`.
pub fn regularized_incomplete_beta<T: Float>(a: T, b: T, x: T) -> T {
    let one = T::one();
    if x <= T::zero() {
        return T::zero();
    }
    if x >= one {
        return one;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (one - x).ln();
    let front = ln_front.exp();
    if x < (a + one) / (a + b + c(2.0)) {
        front * beta_continued_fraction(a, b, x) / a
    } else {
        one - front * beta_continued_fraction(b, a, one - x) / b
    }
}

/// Two-sided tail probability of a Student-t statistic with `df` degrees of freedom.
pub fn student_t_two_sided_p<T: Float>(t: T, df: T) -> T {
    if t.is_infinite() {
        return T::zero();
    }
    let x = df / (df + t * t);
    let p = regularized_incomplete_beta(df / c(2.0), c(0.5), x);
    p.max(T::zero()).min(T::one())
}
