//! `--config` files: one `key = value` per line, `#` starts a comment. Keys
//! are long flag names (underscores allowed). A key fills in its flag only
//! when the command line does not set it already.

use std::ffi::OsString;

use anyhow::{bail, Context, Result};
use clap::{ArgAction, CommandFactory};

use crate::Cli;

pub fn parse(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("config line {}: expected key = value", n + 1);
        };
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        let value = v.trim().trim_matches('"').to_string();
        if key.is_empty() {
            bail!("config line {}: empty key", n + 1);
        }
        out.push((key, value));
    }
    Ok(out)
}

fn config_path(argv: &[OsString]) -> Option<OsString> {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--" {
            return None;
        }
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(p.into());
        }
    }
    None
}

fn given(argv: &[OsString], long: &str, short: Option<char>) -> bool {
    argv.iter().map(|a| a.to_string_lossy()).any(|s| {
        s == format!("--{long}")
            || s.starts_with(&format!("--{long}="))
            || short.is_some_and(|c| s.len() >= 2 && s.starts_with('-') && !s.starts_with("--") && s[1..].starts_with(c))
    })
}

/// Append flags from the config file named by `--config`, if any.
pub fn expand_args(mut argv: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(&path).with_context(|| format!("reading config {}", path.to_string_lossy()))?;
    let entries = parse(&text)?;

    let root = Cli::command();
    let sub_name = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).find(|a| {
        root.get_subcommands().any(|c| c.get_name() == a)
    });
    let Some(sub_name) = sub_name else {
        return Ok(argv);
    };
    let sub = root.find_subcommand(&sub_name).expect("subcommand exists");
    let known_anywhere = |key: &str| {
        root.get_arguments()
            .chain(root.get_subcommands().flat_map(|c| c.get_arguments()))
            .any(|a| a.get_long() == Some(key))
    };

    let mut extra = Vec::new();
    for (key, value) in entries {
        let arg = sub.get_arguments().chain(root.get_arguments()).find(|a| a.get_long() == Some(key.as_str()));
        let Some(arg) = arg else {
            if known_anywhere(&key) {
                continue;
            }
            bail!("config key {key:?} is not a known option");
        };
        if key == "config" || given(&argv, &key, arg.get_short()) {
            continue;
        }
        match arg.get_action() {
            ArgAction::SetTrue => match value.as_str() {
                "true" | "yes" | "1" => extra.push(OsString::from(format!("--{key}"))),
                "false" | "no" | "0" => {}
                _ => bail!("config key {key:?} expects true or false"),
            },
            _ => {
                extra.push(OsString::from(format!("--{key}")));
                extra.push(OsString::from(value));
            }
        }
    }
    match argv.iter().position(|a| a == "--") {
        Some(p) => {
            argv.splice(p..p, extra);
        }
        None => argv.extend(extra),
    }
    Ok(argv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<OsString> {
        s.split_whitespace().map(OsString::from).collect()
    }

    #[test]
    fn parses_lines() {
        let got = parse("# defaults\nseed = 4\nmax_binaries=30  # cap\n\npso-seed = \"7\"\n").unwrap();
        assert_eq!(
            got,
            vec![("seed".into(), "4".into()), ("max-binaries".into(), "30".into()), ("pso-seed".into(), "7".into())]
        );
        assert!(parse("novalue").is_err());
    }

    #[test]
    fn command_line_wins() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("c.conf");
        std::fs::write(&cfg, "seed = 4\nni = 9\nnj = 3\nno_locker_cap = true\nmethod = qtla\n").unwrap();
        let argv = args(&format!("locus gen --nj 5 --config {}", cfg.display()));
        let out: Vec<String> = expand_args(argv).unwrap().iter().map(|a| a.to_string_lossy().into_owned()).collect();
        assert!(out.windows(2).any(|w| w == ["--seed", "4"]));
        assert!(out.windows(2).any(|w| w == ["--ni", "9"]));
        assert!(!out.windows(2).any(|w| w == ["--nj", "3"]));
        assert!(out.contains(&"--no-locker-cap".to_string()));
        assert!(!out.contains(&"--method".to_string()));
    }

    #[test]
    fn unknown_key_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("c.conf");
        std::fs::write(&cfg, "colour = red\n").unwrap();
        assert!(expand_args(args(&format!("locus gen --config {}", cfg.display()))).is_err());
    }
}
