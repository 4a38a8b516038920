//! Plain-text proof trees: premises side by side above a rule line, conclusion below.

struct Block {
    lines: Vec<String>,
    width: usize,
}

fn width(s: &str) -> usize {
    s.chars().count()
}

fn pad(s: &str, left: usize, total: usize) -> String {
    let mut out = " ".repeat(left);
    out.push_str(s);
    let w = width(&out);
    out.push_str(&" ".repeat(total.saturating_sub(w)));
    out
}

/// `node` yields the conclusion text, the rule label (empty for an unlabelled leaf) and the premises.
pub(crate) fn render_tree<'a, T>(root: &'a T, node: &dyn Fn(&'a T) -> (String, String, Vec<&'a T>)) -> String {
    let b = build(root, node);
    b.lines.iter().map(|l| l.trim_end()).collect::<Vec<_>>().join("\n")
}

fn build<'a, T>(t: &'a T, node: &dyn Fn(&'a T) -> (String, String, Vec<&'a T>)) -> Block {
    let (conc, label, prems) = node(t);
    let kids: Vec<Block> = prems.into_iter().map(|p| build(p, node)).collect();
    const GAP: usize = 3;
    let height = kids.iter().map(|k| k.lines.len()).max().unwrap_or(0);
    let prem_width = if kids.is_empty() { 0 } else { kids.iter().map(|k| k.width).sum::<usize>() + GAP * (kids.len() - 1) };
    let mut above = vec![String::new(); height];
    for (i, k) in kids.iter().enumerate() {
        let offset = height - k.lines.len();
        for (row, line) in above.iter_mut().enumerate() {
            if i > 0 {
                line.push_str(&" ".repeat(GAP));
            }
            let text = if row >= offset { k.lines[row - offset].as_str() } else { "" };
            line.push_str(&pad(text, 0, k.width));
        }
    }
    let cw = width(&conc);
    let bar = prem_width.max(cw);
    let mut lines = Vec::new();
    for l in above {
        lines.push(pad(&l, (bar - prem_width) / 2, bar));
    }
    if !label.is_empty() {
        lines.push(format!("{} {}", "-".repeat(bar), label));
    }
    lines.push(pad(&conc, (bar - cw) / 2, bar));
    let w = lines.iter().map(|l| width(l)).max().unwrap_or(0);
    Block { lines: lines.into_iter().map(|l| pad(&l, 0, w)).collect(), width: w }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct N(&'static str, &'static str, Vec<N>);

    #[test]
    fn stacks_premises_over_a_rule_line() {
        let t = N("p & q", "and", vec![N("p", "ax", vec![]), N("q", "ax", vec![])]);
        let out = render_tree(&t, &|n: &N| (n.0.to_string(), n.1.to_string(), n.2.iter().collect()));
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[2].starts_with("-----"));
        assert!(lines[2].ends_with("and"));
        assert!(lines[3].contains("p & q"));
    }
}
