use std::fmt::Write as _;
use std::path::Path;

use super::CliError;

/// Reads the header of a trajectory CSV and checks that it has data rows.
pub fn read_header(path: &Path) -> Result<Vec<String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .filter(|h| !h.trim().is_empty())
        .ok_or_else(|| CliError::Config(format!("{} is empty", path.display())))?
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    if header.first().map(String::as_str) != Some("t") || !header.iter().any(|h| h == "H") {
        return Err(CliError::Config(format!(
            "{}: not a trajectory file (expected columns t and H)",
            path.display()
        )));
    }
    let mut rows = 0;
    for (i, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != header.len() || fields.iter().any(|f| f.trim().parse::<f64>().is_err()) {
            return Err(CliError::Config(format!("{}: malformed row {}", path.display(), i + 2)));
        }
        rows += 1;
    }
    if rows == 0 {
        return Err(CliError::Config(format!("{} has no data rows", path.display())));
    }
    Ok(header)
}

fn quote(s: &str) -> String {
    format!("'{}'", s.replace('\'', "''"))
}

/// A gnuplot script drawing u_j(t), the energy drift and the drift of any
/// integral or spectral-trace columns present in `header`.
pub fn script_for(data: &Path, header: &[String]) -> Result<String, CliError> {
    let col = |name: &str| header.iter().position(|h| h == name).map(|i| i + 1);
    let h = col("H").ok_or_else(|| CliError::Config("trajectory has no H column".into()))?;
    let us: Vec<(usize, &String)> = header
        .iter()
        .enumerate()
        .filter(|(_, n)| n.starts_with("u_"))
        .map(|(i, n)| (i + 1, n))
        .collect();
    let drifts: Vec<(usize, &String)> = header
        .iter()
        .enumerate()
        .filter(|(_, n)| n.starts_with("I_") || n.starts_with("trL"))
        .map(|(i, n)| (i + 1, n))
        .collect();
    let panels = if drifts.is_empty() { 2 } else { 3 };
    let data_name = data.display().to_string();
    let mut s = String::new();
    let _ = writeln!(s, "# gnuplot script for {}", data_name);
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "data = {}", quote(&data_name));
    let _ = writeln!(s, "set terminal pngcairo size 900,{}", 400 * panels);
    let _ = writeln!(s, "set output {}", quote(&format!("{data_name}.png")));
    let _ = writeln!(s, "set multiplot layout {panels},1");
    let _ = writeln!(s, "set xlabel 't'");
    let _ = writeln!(s, "set key outside right");

    let _ = writeln!(s, "set title 'u_j(t)'");
    let curves: Vec<String> = us
        .iter()
        .map(|(c, n)| format!("data skip 1 using 1:{c} with lines title {}", quote(n)))
        .collect();
    let _ = writeln!(s, "plot {}", curves.join(", \\\n     "));

    let _ = writeln!(s, "set title 'energy drift H(t) - H(0)'");
    let _ = writeln!(s, "stats data skip 1 every ::0::0 using {h} name 'H0' nooutput");
    let _ = writeln!(s, "plot data skip 1 using 1:(${h} - H0_min) with lines title 'H'");

    if !drifts.is_empty() {
        let _ = writeln!(s, "set title 'integral drift Q(t) - Q(0)'");
        let mut curves = Vec::new();
        for (k, (c, n)) in drifts.iter().enumerate() {
            let _ = writeln!(s, "stats data skip 1 every ::0::0 using {c} name 'Q{k}' nooutput");
            curves.push(format!("data skip 1 using 1:(${c} - Q{k}_min) with lines title {}", quote(n)));
        }
        let _ = writeln!(s, "plot {}", curves.join(", \\\n     "));
    }
    let _ = writeln!(s, "unset multiplot");
    Ok(s)
}
