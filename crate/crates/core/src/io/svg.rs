//! Deterministic SVG charts: fingerprint bars and PCA scatter.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

const BAR_W: f64 = 800.0;
const BAR_H: f64 = 400.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 70.0;

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// One bar per measure on a fixed [−1, 1] axis.
pub fn fingerprint_svg(names: &[String], w: &[f64], title: &str) -> Result<String> {
    if names.len() != w.len() || w.is_empty() {
        return Err(Error::domain("one bar label per component required"));
    }
    let plot_w = BAR_W - LEFT - RIGHT;
    let plot_h = BAR_H - TOP - BOTTOM;
    let y_of = |v: f64| TOP + (1.0 - v.clamp(-1.0, 1.0)) / 2.0 * plot_h;
    let zero = y_of(0.0);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{BAR_W}" height="{BAR_H}" viewBox="0 0 {BAR_W} {BAR_H}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{BAR_W}" height="{BAR_H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        num(BAR_W / 2.0),
        escape(title)
    );
    for tick in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let y = num(y_of(tick));
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{y}" x2="{}" y2="{y}" stroke="#cccccc" stroke-width="1"/>"##,
            BAR_W - RIGHT
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            num(LEFT - 6.0),
            num(y_of(tick) + 4.0),
            num(tick)
        );
    }
    let slot = plot_w / w.len() as f64;
    for (i, (name, &v)) in names.iter().zip(w).enumerate() {
        let x = LEFT + i as f64 * slot + slot * 0.2;
        let top = y_of(v).min(zero);
        let height = (y_of(v) - zero).abs();
        let fill = if v < 0.0 { "#c0504d" } else { "#4f81bd" };
        let _ = writeln!(
            s,
            r#"<rect class="bar" x="{}" y="{}" width="{}" height="{}" fill="{fill}"><title>{}: {v}</title></rect>"#,
            num(x),
            num(top),
            num(slot * 0.6),
            num(height),
            escape(name)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
            num(x + slot * 0.3),
            num(TOP + plot_h + 20.0),
            escape(name)
        );
    }
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT}" y1="{z}" x2="{}" y2="{z}" stroke="black" stroke-width="1.5"/>"#,
        BAR_W - RIGHT,
        z = num(zero)
    );
    s.push_str("</svg>\n");
    Ok(s)
}

const SC: f64 = 600.0;
const SC_MARGIN: f64 = 60.0;

fn axis_range(vals: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let lo = vals.clone().fold(f64::INFINITY, f64::min);
    let hi = vals.fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    if span <= 1e-12 * (1.0 + lo.abs().max(hi.abs())) {
        (lo - 1.0, hi + 1.0)
    } else {
        (lo - 0.1 * span, hi + 0.1 * span)
    }
}

/// Labelled scatter of first versus second principal component.
pub fn pca_svg(projections: &[[f64; 2]], labels: &[String], title: &str) -> Result<String> {
    if projections.len() < 2 {
        return Err(Error::domain("a scatter needs at least two points"));
    }
    if labels.len() != projections.len() {
        return Err(Error::domain("one label per point required"));
    }
    let (x0, x1) = axis_range(projections.iter().map(|p| p[0]));
    let (y0, y1) = axis_range(projections.iter().map(|p| p[1]));
    let inner = SC - 2.0 * SC_MARGIN;
    let px = |x: f64| SC_MARGIN + (x - x0) / (x1 - x0) * inner;
    let py = |y: f64| SC - SC_MARGIN - (y - y0) / (y1 - y0) * inner;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SC}" height="{SC}" viewBox="0 0 {SC} {SC}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{SC}" height="{SC}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        num(SC / 2.0),
        escape(title)
    );
    let _ = writeln!(
        s,
        r#"<rect x="{SC_MARGIN}" y="{SC_MARGIN}" width="{inner}" height="{inner}" fill="none" stroke="black"/>"#
    );
    if x0 < 0.0 && x1 > 0.0 {
        let _ = writeln!(
            s,
            r##"<line x1="{x}" y1="{SC_MARGIN}" x2="{x}" y2="{}" stroke="#cccccc"/>"##,
            SC - SC_MARGIN,
            x = num(px(0.0))
        );
    }
    if y0 < 0.0 && y1 > 0.0 {
        let _ = writeln!(
            s,
            r##"<line x1="{SC_MARGIN}" y1="{y}" x2="{}" y2="{y}" stroke="#cccccc"/>"##,
            SC - SC_MARGIN,
            y = num(py(0.0))
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">first principal component</text>"#,
        num(SC / 2.0),
        num(SC - 20.0)
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{c}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 20 {c})">second principal component</text>"#,
        c = num(SC / 2.0)
    );
    for (p, label) in projections.iter().zip(labels) {
        let (x, y) = (px(p[0]), py(p[1]));
        let _ = writeln!(
            s,
            r#"<circle class="point" cx="{}" cy="{}" r="5" fill="black"/>"#,
            num(x),
            num(y)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14">{}</text>"#,
            num(x + 8.0),
            num(y - 8.0),
            escape(label)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("m{i}")).collect()
    }

    #[test]
    fn one_bar_per_measure() {
        let s = fingerprint_svg(&names(5), &[0.5, -0.5, 0.1, 0.0, 0.7], "w").unwrap();
        assert_eq!(s.matches(r#"class="bar""#).count(), 5);
        assert!(s.contains(r#"width="800" height="400""#));
        // second bar is negative: starts on the zero line
        let bar = s.lines().filter(|l| l.contains(r#"class="bar""#)).nth(1).unwrap();
        assert!(bar.contains(r#"y="180.00""#) && bar.contains(r#"height="75.00""#));
        assert_eq!(s, fingerprint_svg(&names(5), &[0.5, -0.5, 0.1, 0.0, 0.7], "w").unwrap());
    }

    #[test]
    fn scatter_points_and_collinear_case() {
        let labels: Vec<String> = ["A", "N", "L"].iter().map(|s| s.to_string()).collect();
        let s = pca_svg(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]], &labels, "pca").unwrap();
        assert_eq!(s.matches(r#"class="point""#).count(), 3);
        assert!(pca_svg(&[[0.0, 0.0]], &labels[..1], "pca").is_err());
    }

    #[test]
    fn labels_are_escaped() {
        let s = fingerprint_svg(&["a<b".to_string()], &[1.0], "t&t").unwrap();
        assert!(s.contains("a&lt;b") && s.contains("t&amp;t"));
    }
}
