//! Literal parsers shared by the subcommands: levels, fractions, complex numbers and grids.

use num_complex::Complex64;
use num_rational::Rational64;
use x0n::numtheory::Level;

/// A positive square-free level.
pub fn level(s: &str) -> Result<u64, String> {
    let n: u64 = s.trim().parse().map_err(|_| format!("'{s}' is not a positive integer"))?;
    Level::new(n).map_err(|e| e.to_string())?;
    Ok(n)
}

/// "P/Q" or an integer.
pub fn rational(s: &str) -> Result<Rational64, String> {
    x0n::arithgeom::parse_rational(s).map_err(|e| e.to_string())
}

/// "re,im".
pub fn complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("'{s}' is not a complex literal of the form re,im"))?;
    let re: f64 = re.trim().parse().map_err(|_| format!("malformed real part in '{s}'"))?;
    let im: f64 = im.trim().parse().map_err(|_| format!("malformed imaginary part in '{s}'"))?;
    if !re.is_finite() || !im.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(Complex64::new(re, im))
}

/// A point of the upper half-plane.
pub fn upper_half_plane(s: &str) -> Result<Complex64, String> {
    let z = complex(s)?;
    if z.im <= 0.0 {
        return Err(format!("'{s}' does not lie in the upper half-plane"));
    }
    Ok(z)
}

pub fn positive(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(format!("'{s}' must be a positive finite number"));
    }
    Ok(x)
}

/// Comma-separated positive reals.
pub fn grid(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(positive).collect()
}
