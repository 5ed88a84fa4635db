use std::fmt;

use crate::point::LatticePoint;

/// `t1^2*t3`, or the empty string for the constant monomial.
pub(crate) fn render_monomial(n: &LatticePoint) -> String {
    n.coords()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("t{}", i + 1)
            } else {
                format!("t{}^{e}", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Writes `a - b + c` from `(negative, |coefficient|, basis element)` triples.
/// A coefficient of 1 is elided unless the basis element is empty.
pub(crate) fn write_signed_terms<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (bool, String, String)>,
{
    let mut first = true;
    for (negative, magnitude, basis) in terms {
        match (first, negative) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        if basis.is_empty() {
            f.write_str(&magnitude)?;
        } else if magnitude == "1" {
            f.write_str(&basis)?;
        } else {
            write!(f, "{magnitude}*{basis}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}
