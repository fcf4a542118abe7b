//! Human-readable monomials: superscript exponents, optional barred chart coordinates.

use unicode_normalization::UnicodeNormalization;

use crate::model::{ComponentId, Monomial};

const MACRON: char = '\u{0304}';

pub fn superscript(n: u64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap_or(0) as usize])
        .collect()
}

fn render_with<F: Fn(ComponentId) -> String>(g: &Monomial, name: F) -> String {
    if g.is_unit() {
        return "1".into();
    }
    g.iter()
        .map(|(id, e)| {
            if e == 1 {
                name(id)
            } else {
                format!("{}{}", name(id), superscript(e))
            }
        })
        .collect()
}

pub fn monomial(g: &Monomial, registry: &[String]) -> String {
    render_with(g, |id| registry[id.index()].clone())
}

/// Renders a child generator in the child's own coordinates: every component is barred and the
/// exceptional component takes the name of the chart variable.
pub fn local_monomial(
    g: &Monomial,
    registry: &[String],
    chart_var: ComponentId,
    exceptional: ComponentId,
) -> String {
    // Exceptional last, matching how the chart variable reappears as the new coordinate.
    let (exc, rest) = g.split_by(&[exceptional].into_iter().collect());
    let bar = |id: ComponentId| {
        let base = if id == exceptional {
            &registry[chart_var.index()]
        } else {
            &registry[id.index()]
        };
        format!("{base}{MACRON}")
    };
    let mut out = render_with(&rest, bar);
    if !exc.is_unit() {
        if out == "1" {
            out.clear();
        }
        out.push_str(&render_with(&exc, bar));
    }
    // Precomposed letters where Unicode has them, e.g. ȳ.
    out.nfc().collect()
}

pub fn ideal(gens: &[Monomial], registry: &[String]) -> String {
    gens.iter()
        .map(|g| monomial(g, registry))
        .collect::<Vec<_>>()
        .join(", ")
}
