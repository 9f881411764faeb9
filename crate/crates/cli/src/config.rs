//! `--config FILE` support: `key = value` lines become `--key value` flags
//! placed right after the subcommand, so flags given on the command line
//! override them.

use std::ffi::OsString;
use std::fs;

pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(path) = find_config(&args) else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path).map_err(|e| format!("cannot read config file {path}: {e}"))?;
    let mut flags = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("{path}:{}: expected key=value, got {raw:?}", i + 1))?;
        let k = k.trim().trim_start_matches("--");
        if k.is_empty() || k == "config" {
            return Err(format!("{path}:{}: bad key {k:?}", i + 1));
        }
        // `n` (period) and `N` (orbit length) differ only in case; `M` has no
        // lower-case twin.
        let name = if k == "m" { "M".to_string() } else { k.replace('_', "-") };
        flags.push(OsString::from(format!("--{name}")));
        flags.push(OsString::from(v.trim()));
    }
    // Subcommand is the first argument after the binary that is not a flag.
    let at = args.iter().skip(1).position(|a| !a.to_string_lossy().starts_with('-')).map(|i| i + 2).unwrap_or(args.len());
    let mut out = args[..at].to_vec();
    out.extend(flags);
    out.extend_from_slice(&args[at..]);
    Ok(out)
}

fn find_config(args: &[OsString]) -> Option<String> {
    let mut it = args.iter().map(|a| a.to_string_lossy().into_owned());
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next();
        }
        if let Some(v) = a.strip_prefix("--config=") {
            return Some(v.to_string());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn flags_go_after_the_subcommand() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("run.cfg");
        fs::write(&f, "# comment\nM = 3\na=1/5\n\nburn_in=10  # trailing\n").unwrap();
        let cfg = f.to_string_lossy().into_owned();
        let got = expand(os(&["hb", "simulate", "--config", &cfg, "--seed", "1"])).unwrap();
        let want = os(&[
            "hb", "simulate", "--M", "3", "--a", "1/5", "--burn-in", "10", "--config", &cfg, "--seed", "1",
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn malformed_line() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("bad.cfg");
        fs::write(&f, "M 2\n").unwrap();
        let cfg = f.to_string_lossy().into_owned();
        assert!(expand(os(&["hb", "verify", "--config", &cfg])).is_err());
    }
}
