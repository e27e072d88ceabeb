//! Rational literals: `n`, `n/d`, `n*p^k`, `n/d*p^k`, `p^k`, `-p^k`.

use num_bigint::BigInt;
use padic_cubic::{PadicRational, Prime};

pub fn parse_rational(text: &str, prime: Prime) -> Result<PadicRational, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty literal".into());
    }
    let (coeff, exponent) = match s.find("p^") {
        Some(pos) => {
            let k: i64 = s[pos + 2..]
                .parse()
                .map_err(|_| format!("bad exponent in '{text}'"))?;
            let head = &s[..pos];
            let coeff = match head {
                "" => "1",
                "-" => "-1",
                h => h
                    .strip_suffix('*')
                    .ok_or_else(|| format!("expected '*' before p^ in '{text}'"))?,
            };
            (coeff, k)
        }
        None => (s.as_str(), 0),
    };
    let (num, den) = match coeff.split_once('/') {
        Some((n, d)) => (n, d),
        None => (coeff, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("bad numerator in '{text}'"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| format!("bad denominator in '{text}'"))?;
    let value = PadicRational::new(num, den, prime).map_err(|e| format!("'{text}': {e}"))?;
    Ok(value.mul_pow_p(exponent))
}
