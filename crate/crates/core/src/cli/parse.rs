//! Literal forms accepted on the command line.

use num_complex::Complex64;

/// Parses `"re,im"`, `"r∠theta"` (angle in radians) or a plain real.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s = s.trim();
    let real = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("`{t}` is not a finite number"))
    };
    if let Some((r, theta)) = s.split_once('∠') {
        return Ok(Complex64::from_polar(real(r)?, real(theta)?));
    }
    if let Some((re, im)) = s.split_once(',') {
        return Ok(Complex64::new(real(re)?, real(im)?));
    }
    Ok(Complex64::new(real(s)?, 0.0))
}

/// A monomial dilatation `a z^n` given as `"a=<complex>,n=<int>"`. Bare
/// tokens continue the previous value, so `a=0.5,0.2,n=3` means
/// `a = 0.5 + 0.2i`. Missing keys default to `a = 0`, `n = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonomialTerm {
    pub a: Complex64,
    pub n: usize,
}

impl MonomialTerm {
    /// Coefficients of `a z^n`, lowest degree first.
    pub fn coefficients(&self) -> Vec<Complex64> {
        let mut c = vec![Complex64::new(0.0, 0.0); self.n + 1];
        c[self.n] = self.a;
        c
    }
}

pub fn parse_monomial(s: &str) -> Result<MonomialTerm, String> {
    let mut fields: Vec<(String, String)> = Vec::new();
    for token in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match token.split_once('=') {
            Some((k, v)) => fields.push((k.trim().to_owned(), v.trim().to_owned())),
            None => match fields.last_mut() {
                Some((_, v)) => {
                    v.push(',');
                    v.push_str(token);
                }
                None => return Err(format!("omega token `{token}` has no key")),
            },
        }
    }
    let mut config = MonomialTerm {
        a: Complex64::new(0.0, 0.0),
        n: 1,
    };
    for (k, v) in fields {
        match k.as_str() {
            "a" => config.a = parse_complex(&v)?,
            "n" => config.n = v.parse().map_err(|_| format!("omega exponent `{v}` is not an integer"))?,
            other => return Err(format!("unknown omega key `{other}` (expected a, n)")),
        }
    }
    Ok(config)
}
