use automaton_logic::{PartitionLogic, Result};

const ROW: f64 = 70.0;
const COL: f64 = 80.0;
const MARGIN: f64 = 30.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Hasse diagram as inline SVG, one row per rank (length of the longest
/// chain down to the empty set).
pub fn hasse_svg(logic: &PartitionLogic) -> Result<String> {
    let h = logic.hasse()?;
    let mut rank = vec![0usize; h.elements.len()];
    let mut changed = true;
    while changed {
        changed = false;
        for &(lo, hi) in &h.covers {
            if rank[hi] < rank[lo] + 1 {
                rank[hi] = rank[lo] + 1;
                changed = true;
            }
        }
    }
    let top = rank.iter().copied().max().unwrap_or(0);
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    for (i, &r) in rank.iter().enumerate() {
        rows[r].push(i);
    }
    let widest = rows.iter().map(Vec::len).max().unwrap_or(1);
    let width = 2.0 * MARGIN + COL * widest.saturating_sub(1) as f64;
    let height = 2.0 * MARGIN + ROW * top as f64;
    let mut pos = vec![(0.0, 0.0); h.elements.len()];
    for (r, row) in rows.iter().enumerate() {
        let offset = (width - COL * row.len().saturating_sub(1) as f64) / 2.0;
        for (k, &i) in row.iter().enumerate() {
            pos[i] = (offset + COL * k as f64, height - MARGIN - ROW * r as f64);
        }
    }
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width} {height}\" width=\"{width}\" height=\"{height}\">\n"
    );
    for &(lo, hi) in &h.covers {
        let ((x1, y1), (x2, y2)) = (pos[lo], pos[hi]);
        out.push_str(&format!("<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"#888\"/>\n"));
    }
    for (i, e) in h.elements.iter().enumerate() {
        let (x, y) = pos[i];
        let label = escape(&logic.render_element(e));
        out.push_str(&format!(
            "<circle cx=\"{x}\" cy=\"{y}\" r=\"4\"/><text x=\"{x}\" y=\"{}\" text-anchor=\"middle\" font-size=\"11\">{label}</text>\n",
            y - 8.0
        ));
    }
    out.push_str("</svg>\n");
    Ok(out)
}
