use anyhow::{bail, Context as _, Result};
use clap::Args;
use krull_core::group::{ElementInput, GroupSpec};
use krull_core::presets::{build_preset, from_matrix, DefiningMatrix, Family, Preset};
use krull_core::sequence::Alphabet;
use krull_core::transfer::{AlphabetFile, Characteristic, CharacteristicFile};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use std::collections::BTreeMap;

/// Where the alphabet comes from: a preset, an explicit group and set, an
/// alphabet file, a defining matrix, or a characteristic.
#[derive(Args, Default)]
pub struct InputArgs {
    /// Preset name, either complete (`thm74:2,1`) or bare with parameter flags.
    #[arg(long, visible_alias = "family")]
    pub preset: Option<String>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub alpha: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub split: Option<u32>,
    #[arg(long)]
    pub include_zero: bool,
    /// ADE type for hypersurface presets: A<n>, D<n>, E6, E7, E8.
    #[arg(long)]
    pub singularity: Option<String>,
    /// Group as JSON (inline or path), e.g. `{"free_rank":1}`.
    #[arg(long)]
    pub group: Option<String>,
    /// Elements as a JSON array, or an object `{group, elements}` (inline or path).
    #[arg(long)]
    pub set: Option<String>,
    /// Alphabet file `{group, elements}` (inline or path).
    #[arg(long)]
    pub alphabet: Option<String>,
    /// Defining matrix `{rows, columns:[{vec, mult}]}` (inline or path).
    #[arg(long)]
    pub matrix: Option<String>,
    /// Row-reduce the defining matrix before reading off classes.
    #[arg(long)]
    pub reduce: bool,
    /// Characteristic `{group, classes:[{element, multiplicity}]}` (inline or path).
    #[arg(long)]
    pub characteristic: Option<String>,
}

/// Parse JSON given inline (starting with `{` or `[`) or as a file path.
pub fn load_json<T: DeserializeOwned>(s: &str) -> Result<T> {
    let t = s.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        serde_json::from_str(t).with_context(|| format!("invalid inline JSON `{s}`"))
    } else {
        let text = std::fs::read_to_string(s).with_context(|| format!("cannot read `{s}`"))?;
        serde_json::from_str(&text).with_context(|| format!("invalid JSON in `{s}`"))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SetInput {
    Elements(Vec<ElementInput>),
    File(AlphabetFile),
}

impl InputArgs {
    fn preset_name(&self) -> Result<Option<String>> {
        let Some(name) = self
            .preset
            .as_deref()
            .or(self.singularity.as_ref().map(|_| "hypersurface"))
        else {
            return Ok(None);
        };
        if name.contains(':') {
            return Ok(Some(name.to_string()));
        }
        let need = |v: Option<u32>, flag: &str| {
            v.with_context(|| format!("preset `{name}` needs --{flag}"))
        };
        let args = match name {
            "thm74" => format!("{},{}", need(self.r, "r")?, need(self.alpha, "alpha")?),
            "cube" => format!("{},{}", need(self.r, "r")?, u8::from(self.include_zero)),
            "full_box" | "split1" | "split2" => need(self.q, "q")?.to_string(),
            "cyclic" => need(self.n, "n")?.to_string(),
            "frt_t" => need(self.split, "split")?.to_string(),
            "hypersurface" => self
                .singularity
                .clone()
                .context("preset `hypersurface` needs --singularity")?,
            _ => return Ok(Some(name.to_string())),
        };
        Ok(Some(format!("{name}:{args}")))
    }

    pub fn resolve(&self) -> Result<Preset> {
        let sources = [
            self.preset.is_some() || self.singularity.is_some(),
            self.set.is_some(),
            self.alphabet.is_some(),
            self.matrix.is_some(),
            self.characteristic.is_some(),
        ];
        match sources.iter().filter(|&&b| b).count() {
            0 => bail!("no input: give --preset, --set, --alphabet, --matrix or --characteristic"),
            1 => {}
            _ => {
                bail!("give exactly one of --preset, --set, --alphabet, --matrix, --characteristic")
            }
        }
        let custom = |name: &str, alphabet: Alphabet| Preset {
            name: name.into(),
            alphabet,
            characteristic: None,
            expected: BTreeMap::new(),
        };
        if let Some(name) = self.preset_name()? {
            let family: Family = name.parse()?;
            return Ok(build_preset(family)?);
        }
        if let Some(s) = &self.set {
            let file = match load_json::<SetInput>(s)? {
                SetInput::File(f) => f,
                SetInput::Elements(elements) => {
                    let g = self
                        .group
                        .as_deref()
                        .context("--set given as an array needs --group")?;
                    AlphabetFile {
                        group: load_json::<GroupSpec>(g)?,
                        elements,
                    }
                }
            };
            return Ok(custom("custom", file.build()?));
        }
        if let Some(s) = &self.alphabet {
            return Ok(custom("custom", load_json::<AlphabetFile>(s)?.build()?));
        }
        if let Some(s) = &self.matrix {
            return Ok(from_matrix(&load_json::<DefiningMatrix>(s)?, self.reduce)?);
        }
        let s = self.characteristic.as_deref().expect("one source is set");
        let ch = Characteristic::from_file(&load_json::<CharacteristicFile>(s)?)?;
        let alphabet = ch.alphabet()?;
        Ok(Preset {
            name: "characteristic".into(),
            alphabet,
            characteristic: Some(ch),
            expected: BTreeMap::new(),
        })
    }
}
