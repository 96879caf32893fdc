//! Diagram rendering: character grids for the terminal and standalone SVG
//! documents. Both forms are deterministic functions of the permutation
//! and the render options.

use std::collections::BTreeSet;

use knotperm::diagram::{crossings, seifert_circles, DiagramError};
use knotperm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderSpec {
    /// Pixels per lattice unit; SVG only, and at least 4 there.
    pub cell_size: u32,
    pub show_diagonal: bool,
    pub show_crossings: bool,
    pub show_seifert: bool,
    pub format: RenderFormat,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            cell_size: 24,
            show_diagonal: true,
            show_crossings: true,
            show_seifert: false,
            format: RenderFormat::Ascii,
        }
    }
}

/// Character-grid picture, `2n-1` rows of up to `2n-1` columns: `+` marks
/// dots and segment corners, `-` and `|` the strands, `.` untouched
/// diagonal points, and `^` a crossing (the vertical strand runs over).
/// Lattice point `(x, y)` sits at row `2(n-y)`, column `2(x-1)`.
pub fn ascii(p: &Permutation, spec: &RenderSpec) -> String {
    let n = p.n();
    if n == 0 {
        return String::new();
    }
    let size = 2 * n - 1;
    let mut grid = vec![vec![' '; size]; size];
    let at = |x: usize, y: usize| (2 * (n - y), 2 * (x - 1));

    if spec.show_diagonal {
        for k in 1..=n {
            let (r, c) = at(k, k);
            grid[r][c] = '.';
        }
    }

    let crossing_points: BTreeSet<(usize, usize)> = crossings(p)
        .iter()
        .map(|c| (c.at.x as usize, c.at.y as usize))
        .collect();

    // Horizontal strands first; vertical strands afterwards overwrite the
    // shared cells, which is exactly the over/under convention.
    for i in 1..=n {
        let s = p.image(i);
        if s == i {
            continue;
        }
        let (r, _) = at(1, s);
        let (xlo, xhi) = (i.min(s), i.max(s));
        for x in xlo..=xhi {
            let (_, c) = at(x, s);
            grid[r][c] = if x == xlo || x == xhi { '+' } else { '-' };
            if x < xhi {
                grid[r][c + 1] = '-';
            }
        }
    }
    for i in 1..=n {
        let s = p.image(i);
        if s == i {
            continue;
        }
        let (_, c) = at(i, 1);
        let (ylo, yhi) = (i.min(s), i.max(s));
        for y in ylo..=yhi {
            let (r, _) = at(i, y);
            grid[r][c] = if y == ylo || y == yhi {
                '+'
            } else if crossing_points.contains(&(i, y)) && spec.show_crossings {
                '^'
            } else {
                '|'
            };
            if y < yhi {
                grid[r - 1][c] = '|';
            }
        }
    }

    let mut out = String::new();
    for row in grid {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    if spec.show_seifert {
        match seifert_circles(p) {
            Ok(dec) => out.push_str(&format!("seifert circles: {}\n", dec.circle_count())),
            Err(e) => out.push_str(&format!("seifert circles: unavailable ({e})\n")),
        }
    }
    out
}

/// Standalone SVG document: light grid, dashed diagonal, one dot per
/// column, whole vertical strands, horizontal strands broken around each
/// crossing, and optionally the smoothed circles as a dashed overlay.
pub fn svg(p: &Permutation, spec: &RenderSpec) -> Result<String, DiagramError> {
    let n = p.n() as i64;
    let cell = i64::from(spec.cell_size);
    let side = (n + 1) * cell;
    let px = |x: i64| x * cell;
    let py = |y: i64| (n + 1 - y) * cell;

    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {side} {side}\" \
         width=\"{side}\" height=\"{side}\">\n"
    ));
    s.push_str(
        "<style>.grid{stroke:#dddddd;stroke-width:1}\
         .diagonal{stroke:#999999;stroke-width:1;stroke-dasharray:4 3}\
         .strand{stroke:#222222;stroke-width:2;fill:none;stroke-linecap:round}\
         .dot{fill:#222222}\
         .seifert{stroke:#cc3333;stroke-width:1.5;fill:none;stroke-dasharray:2 2}\
         </style>\n",
    );

    for k in 1..=n {
        s.push_str(&format!(
            "<line class=\"grid\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
            px(k),
            py(1),
            px(k),
            py(n)
        ));
        s.push_str(&format!(
            "<line class=\"grid\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
            px(1),
            py(k),
            px(n),
            py(k)
        ));
    }
    if spec.show_diagonal {
        s.push_str(&format!(
            "<line class=\"diagonal\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
            px(1),
            py(1),
            px(n),
            py(n)
        ));
    }

    let all_crossings = crossings(p);
    let gap = ((cell * 3) / 10).max(1);
    for i in 1..=p.n() {
        let si = p.image(i);
        if si == i {
            continue;
        }
        s.push_str(&format!(
            "<path class=\"strand\" d=\"M {} {} L {} {}\"/>\n",
            px(i as i64),
            py(i as i64),
            px(i as i64),
            py(si as i64)
        ));

        let y = py(si as i64);
        let (a, b) = (px(i as i64), px(si as i64));
        let dir: i64 = if b > a { 1 } else { -1 };
        let mut breaks: Vec<i64> = all_crossings
            .iter()
            .filter(|c| c.horizontal == i)
            .map(|c| px(c.at.x))
            .collect();
        breaks.sort_unstable();
        if dir < 0 {
            breaks.reverse();
        }
        let mut d = String::new();
        let mut cur = a;
        if spec.show_crossings {
            for x in breaks {
                d.push_str(&format!("M {cur} {y} L {} {y} ", x - gap * dir));
                cur = x + gap * dir;
            }
        }
        d.push_str(&format!("M {cur} {y} L {b} {y}"));
        s.push_str(&format!("<path class=\"strand\" d=\"{d}\"/>\n"));
    }

    let radius = (cell / 6).max(2);
    for i in 1..=p.n() {
        let si = p.image(i);
        s.push_str(&format!(
            "<circle class=\"dot\" cx=\"{}\" cy=\"{}\" r=\"{radius}\"/>\n",
            px(i as i64),
            py(si as i64)
        ));
    }

    if spec.show_seifert {
        let dec = seifert_circles(p)?;
        for circle in dec.circles() {
            let mut d = String::new();
            for (k, v) in circle.vertices.iter().enumerate() {
                let cmd = if k == 0 { 'M' } else { 'L' };
                d.push_str(&format!("{cmd} {} {} ", px(v.x), py(v.y)));
            }
            d.push('Z');
            s.push_str(&format!("<path class=\"seifert\" d=\"{d}\"/>\n"));
        }
    }

    s.push_str("</svg>\n");
    Ok(s)
}
