//! Chamber diagrams of the `(r, L)` plane: a fixed ASCII grid and SVG.

use std::collections::BTreeMap;
use std::fmt::Write;

use starph_core::{ChamberPoset, Rational, Region, Side};

pub const GRID_COLS: usize = 40;
pub const GRID_ROWS: usize = 20;

const RANK_DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// Everything a diagram needs, computed once per scenario.
pub struct Diagram<'a> {
    pub poset: &'a ChamberPoset,
    pub ranks: &'a [usize],
    /// Distinct tail lengths with their multiplicities.
    pub verticals: BTreeMap<Rational, usize>,
    pub overlay: Option<Region>,
}

impl Diagram<'_> {
    /// Both axes run over `(0, 5/4 * largest tail length]`.
    pub fn extent(&self) -> Rational {
        let top = self.verticals.keys().next_back().cloned().unwrap_or_else(Rational::one);
        top * Rational::new(5, 4).expect("constant")
    }

    fn rank_at(&self, r: &Rational, l: &Rational) -> usize {
        self.poset.chamber_of(r, l).map_or(0, |i| self.ranks[i])
    }

    /// Cell centres, top row first.
    fn cells(&self) -> Vec<Vec<(Rational, Rational)>> {
        let ext = self.extent();
        let at = |i: usize, n: usize| &ext * Rational::new(2 * i as i64 + 1, 2 * n as i64).expect("nonzero");
        (0..GRID_ROWS)
            .map(|row| {
                let l = at(GRID_ROWS - 1 - row, GRID_ROWS);
                (0..GRID_COLS).map(|col| (at(col, GRID_COLS), l.clone())).collect()
            })
            .collect()
    }

    pub fn ascii(&self) -> String {
        let cells = self.cells();
        let mut out = String::new();
        out.push_str("L\n");
        for row in &cells {
            out.push('|');
            for (r, l) in row {
                let rank = self.rank_at(r, l);
                out.push(match rank {
                    0 => '.',
                    n if n < RANK_DIGITS.len() => RANK_DIGITS[n] as char,
                    _ => '+',
                });
            }
            out.push('\n');
        }
        let _ = writeln!(out, "+{}> r", "-".repeat(GRID_COLS));
        let ext = self.extent();
        let _ = writeln!(out, "r in (0, {ext}], L in (0, {ext}]");
        let verticals: Vec<String> = self.verticals.iter().map(|(v, m)| format!("{v} (x{m})")).collect();
        let _ = writeln!(out, "verticals: {}", verticals.join(", "));
        if let Some(region) = &self.overlay {
            let _ = writeln!(out, "\noverlay {region}");
            for row in &cells {
                out.push('|');
                for (r, l) in row {
                    out.push(if region.contains_point(r, l) { '#' } else { '.' });
                }
                out.push('\n');
            }
            let _ = writeln!(out, "+{}> r", "-".repeat(GRID_COLS));
        }
        out
    }

    pub fn svg(&self) -> String {
        const SIZE: f64 = 400.0;
        const PAD: f64 = 48.0;
        let ext = self.extent();
        let e = ext.to_f64();
        let x = |r: f64| PAD + SIZE * r / e;
        let y = |l: f64| PAD + SIZE - SIZE * l / e;
        let total = SIZE + 2.0 * PAD;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}" font-family="monospace" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect x="0" y="0" width="{total}" height="{total}" fill="white"/>"#);

        if let Some(region) = &self.overlay {
            let b = region.bound().to_f64().min(e);
            let points = match region {
                Region::Rectangle(_) => vec![(0.0, 0.0), (b, 0.0), (b, e), (0.0, e)],
                Region::Trapezoid(_) => vec![(0.0, 0.0), (b, b), (b, e), (0.0, e)],
            };
            let pts: Vec<String> = points.iter().map(|(r, l)| format!("{:.2},{:.2}", x(*r), y(*l))).collect();
            let _ = writeln!(
                s,
                r##"<polygon class="overlay" points="{}" fill="#9ecae1" fill-opacity="0.5" stroke="none"><title>{}</title></polygon>"##,
                pts.join(" "),
                escape(&region.to_string())
            );
        }

        // axes
        let _ = writeln!(
            s,
            r#"<line class="axis" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
            x(0.0),
            y(0.0),
            x(e),
            y(0.0)
        );
        let _ = writeln!(
            s,
            r#"<line class="axis" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
            x(0.0),
            y(0.0),
            x(0.0),
            y(e)
        );
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">r</text>"#, x(e) + 8.0, y(0.0) + 4.0);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">L</text>"#, x(0.0) - 4.0, y(e) - 8.0);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, x(e) - 16.0, y(0.0) + 28.0, escape(&ext.to_pq()));

        for (v, m) in &self.verticals {
            let vx = x(v.to_f64());
            let _ = writeln!(
                s,
                r##"<line class="vertical" x1="{vx:.2}" y1="{:.2}" x2="{vx:.2}" y2="{:.2}" stroke="#555" stroke-dasharray="4 3"/>"##,
                y(0.0),
                y(e)
            );
            let _ = writeln!(
                s,
                r#"<text class="vertical-label" x="{:.2}" y="{:.2}" text-anchor="middle">{} x{m}</text>"#,
                vx,
                y(0.0) + 14.0,
                escape(&v.to_pq())
            );
        }
        let _ = writeln!(
            s,
            r##"<line class="diagonal" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#c00"/>"##,
            x(0.0),
            y(0.0),
            x(e),
            y(e)
        );

        for (i, c) in self.poset.chambers().iter().enumerate() {
            let hi = c.upper.as_ref().map_or(e, |u| u.to_f64().min(e));
            let r = (c.lower.to_f64() + hi) / 2.0;
            let l = match c.side {
                Side::Above => (r + e) / 2.0,
                Side::Below => r / 2.0,
            };
            let _ = writeln!(
                s,
                r#"<text class="rank" data-chamber="{i}" x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                x(r),
                y(l) + 4.0,
                self.ranks[i]
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
