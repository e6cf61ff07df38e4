//! Printing in e-notation: `a e1 + b(e2+e4) + c e3`.

use crate::paction::{AlgElement, PointSet, SetPartialAction};

/// `e1+e3`, or `0` for the empty set.
pub fn set(labels: &[String], s: &PointSet) -> String {
    if s.is_empty() {
        return "0".into();
    }
    s.members().map(|x| labels[x].as_str()).collect::<Vec<_>>().join("+")
}

fn term(coeff: &str, labels: &[String], pts: &[usize]) -> String {
    let body = pts.iter().map(|&x| labels[x].as_str()).collect::<Vec<_>>().join("+");
    match (coeff, pts.len()) {
        ("1", 1) => body,
        ("1", _) => format!("({body})"),
        (c, 1) => format!("{c} {body}"),
        (c, _) => format!("{c}({body})"),
    }
}

/// Groups points sharing a coefficient, in order of first appearance.
fn grouped(labels: &[String], coeffs: &[String]) -> String {
    let mut groups: Vec<(String, Vec<usize>)> = Vec::new();
    for (x, c) in coeffs.iter().enumerate() {
        if c == "0" {
            continue;
        }
        match groups.iter_mut().find(|(k, _)| k == c) {
            Some((_, pts)) => pts.push(x),
            None => groups.push((c.clone(), vec![x])),
        }
    }
    if groups.is_empty() {
        return "0".into();
    }
    groups
        .iter()
        .map(|(c, pts)| term(c, labels, pts))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// A numeric element, e.g. `2 e1 + 3(e2+e4)`.
pub fn element(labels: &[String], s: &AlgElement) -> String {
    let coeffs: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
    grouped(labels, &coeffs)
}

/// The image of `Σ v_i e_i` under the linear map with `images[i] = f(e_i)`,
/// with symbolic coefficients `vars`.
pub fn linear_image(out_labels: &[String], images: &[AlgElement], vars: &[String]) -> String {
    let n = out_labels.len();
    let mut coeffs = vec![Vec::<String>::new(); n];
    for (i, img) in images.iter().enumerate() {
        for z in 0..n {
            let c = img.coeff(z);
            if c.is_zero() {
                continue;
            }
            coeffs[z].push(if c.is_one() { vars[i].clone() } else { format!("{c}{}", vars[i]) });
        }
    }
    let flat: Vec<String> = coeffs
        .into_iter()
        .map(|cs| match cs.len() {
            0 => "0".to_string(),
            1 => cs.into_iter().next().expect("one"),
            _ => format!("({})", cs.join("+")),
        })
        .collect();
    grouped(out_labels, &flat)
}

/// Default variable names `a, b, c, …`.
pub fn letters(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| if n <= 26 { ((b'a' + i as u8) as char).to_string() } else { format!("a{}", i + 1) })
        .collect()
}

/// `R(e1+e3) ⊕ R e2`, one summand per block given as point sets.
pub fn direct_sum(labels: &[String], blocks: &[Vec<usize>]) -> String {
    if blocks.is_empty() {
        return "0".into();
    }
    blocks
        .iter()
        .map(|b| term("R", labels, b))
        .collect::<Vec<_>>()
        .join(" ⊕ ")
}

/// `x -> y` pairs of one map, in domain order.
pub fn map(a: &SetPartialAction, g: usize) -> String {
    let pairs: Vec<String> = (0..a.points())
        .filter_map(|x| a.map(g, x).map(|y| format!("{} -> {}", a.label(x), a.label(y))))
        .collect();
    if pairs.is_empty() {
        "0".into()
    } else {
        pairs.join(", ")
    }
}

/// Compact tensor labels: `e1⊗e2` becomes `e12` when both sides are
/// single-digit basis names.
pub fn compact_tensor_label(label: &str) -> String {
    label
        .split('+')
        .map(|part| match part.split_once('⊗') {
            Some((l, r)) => {
                let digit = |s: &str| s.strip_prefix('e').filter(|d| d.len() == 1 && d.chars().all(|c| c.is_ascii_digit())).map(str::to_string);
                match (digit(l), digit(r)) {
                    (Some(a), Some(b)) => format!("e{a}{b}"),
                    _ => part.to_string(),
                }
            }
            None => part.to_string(),
        })
        .collect::<Vec<_>>()
        .join("+")
}
