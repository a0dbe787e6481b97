//! Command-line front end over the on-disk store.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::embeddings::{embed_city, train_encoder, EmbeddingTable, EncoderOptions, RegionMethod};
use crate::error::{Error, Result};
use crate::evaluation::{
    eda_stats, iteration_seeds, normalize_across_cities, run_experiment, sweep, transfer_matrix, write_results_csv,
    CityData, SweepRow,
};
use crate::hexgrid::Resolution;
use crate::learning::{fit_classifier, sample_training_set, ExperimentConfig, DEFAULT_THRESHOLD};
use crate::osm::store::{read_file, write_atomic, Store};
use crate::osm::{build_all_tag_vocab, fetch_overpass, load_stations, parse_geojson, OverpassConfig, TagVocabulary};
use crate::predict::{export_geojson, predict_city, PredictionMap};
use crate::study_area::{assign_objects, dilate, read_buckets, read_labels, write_buckets, write_labels, CityDataset};

/// Rings of context kept around the study area for neighbourhood features.
pub const DEFAULT_MARGIN: u32 = 5;

#[derive(Debug, Parser)]
#[command(name = "hexstation", version, about = "Bike-share station presence prediction on hexagonal cells")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Data directory holding per-city artifacts.
    #[arg(long, global = true, env = "HEXSTATION_STORE", default_value = "hexstation-data")]
    pub store: PathBuf,
    /// Seed for every random choice; a random one is drawn and reported when omitted.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Experiment config (JSON, schema hexstation-config/1).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// City name; repeat for commands that take several cities.
    #[arg(long, global = true)]
    pub city: Vec<String>,
    /// Grid resolution; defaults to the config value or 9.
    #[arg(long, global = true)]
    pub res: Option<u8>,
    /// Output file (or directory for `transfer`); stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Download (or import) OSM objects for a city.
    Ingest {
        /// Administrative area name to query; defaults to the city name.
        #[arg(long)]
        area: Option<String>,
        /// Import a local GeoJSON file instead of querying Overpass.
        #[arg(long)]
        geojson: Option<PathBuf>,
    },
    /// Import station locations (CSV with lat/lon columns, or GeoJSON points).
    Stations {
        #[arg(long)]
        file: PathBuf,
    },
    /// Build the labelled study area and assign objects to cells.
    Area {
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: u32,
    },
    /// Compute region embeddings, optionally shrunk by an encoder.
    Embed {
        #[arg(long)]
        method: RegionMethod,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: u32,
        /// Train an encoder with this bottleneck and store encoded vectors.
        #[arg(long)]
        encode: Option<usize>,
        #[arg(long, default_value_t = 200)]
        epochs: usize,
        /// Rebuild the all-tag vocabulary from every ingested city.
        #[arg(long)]
        rebuild_vocab: bool,
    },
    /// Fit one model on a sampled training set and write it as JSON.
    Train,
    /// Repeated train/test evaluation on one city.
    Eval,
    /// Evaluate every config of a JSON array given by --config.
    Sweep,
    /// Cross-city transfer matrix over two or more cities.
    Transfer,
    /// Whole-city probability map (CSV) from models trained on another city.
    Predict {
        /// City to train on; defaults to the evaluated city.
        #[arg(long)]
        train_city: Option<String>,
        /// Models to average; defaults to the config's iterations.
        #[arg(long)]
        iterations: Option<usize>,
    },
    /// Convert a probability CSV to GeoJSON, dropping cells below the threshold.
    Export {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        threshold: f64,
    },
    /// Descriptive statistics per city.
    Stats {
        /// Population as CITY=COUNT; repeatable.
        #[arg(long, value_parser = parse_population)]
        population: Vec<(String, u64)>,
    },
}

fn parse_population(s: &str) -> std::result::Result<(String, u64), String> {
    let (city, n) = s.split_once('=').ok_or("expected CITY=COUNT")?;
    let n = n.trim().parse().map_err(|e| format!("population count: {e}"))?;
    Ok((city.trim().to_owned(), n))
}

struct Ctx {
    store: Store,
    global: GlobalArgs,
}

impl Ctx {
    fn city(&self) -> Result<&str> {
        match self.global.city.as_slice() {
            [c] => Ok(c),
            [] => Err(Error::config("--city is required")),
            _ => Err(Error::config("this command takes a single --city")),
        }
    }

    fn res(&self) -> Result<Resolution> {
        Resolution::new(self.global.res.unwrap_or(9))
    }

    /// The experiment config with command-line overrides and a resolved seed.
    fn config(&self) -> Result<ExperimentConfig> {
        let (mut cfg, explicit_seed) = match &self.global.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
                let raw: Value = serde_json::from_str(&text).map_err(|e| Error::config(format!("invalid config: {e}")))?;
                (ExperimentConfig::from_json(&text)?, raw.get("seed").is_some())
            }
            None => (ExperimentConfig::default(), false),
        };
        if let Some(r) = self.global.res {
            cfg.resolution = Resolution::new(r)?;
        }
        cfg.seed = resolve_seed(self.global.seed, explicit_seed.then_some(cfg.seed));
        Ok(cfg)
    }

    fn emit(&self, bytes: &[u8]) -> Result<()> {
        match &self.global.out {
            Some(p) => write_atomic(p, bytes),
            None => {
                std::io::stdout().write_all(bytes)?;
                Ok(())
            }
        }
    }

    fn load_city(&self, city: &str, cfg: &ExperimentConfig) -> Result<CityData> {
        let res = cfg.resolution;
        let labels_path = self.store.labels_path(city, res);
        let labels = read_labels(read_file(&labels_path)?.as_slice())?;
        let stations = self.store.read_stations(city).unwrap_or_default();
        let ds = CityDataset::from_labels(city, res, labels, stations);
        let method = cfg.region_method;
        let emb_path = self.store.embedding_path(city, method.name(), res);
        let table = EmbeddingTable::read_csv(read_file(&emb_path)?.as_slice())?;
        Ok(CityData::new(ds).with_embeddings(method, table))
    }
}

fn resolve_seed(flag: Option<u64>, from_config: Option<u64>) -> u64 {
    flag.or(from_config).unwrap_or_else(|| {
        let s: u64 = rand::random();
        eprintln!("seed: {s} (random; pass --seed {s} to replay)");
        s
    })
}

/// Parses arguments and runs one command.
pub fn run(cli: Cli) -> Result<()> {
    let ctx = Ctx {
        store: Store::new(&cli.global.store),
        global: cli.global,
    };
    match cli.command {
        Command::Ingest { area, geojson } => ingest(&ctx, area, geojson),
        Command::Stations { file } => {
            let city = ctx.city()?;
            let stations = load_stations(&read_file(&file)?, city)?;
            ctx.store.write_stations(city, &stations)?;
            println!("{city}: {} stations", stations.len());
            Ok(())
        }
        Command::Area { margin } => area(&ctx, margin),
        Command::Embed {
            method,
            margin,
            encode,
            epochs,
            rebuild_vocab,
        } => embed(&ctx, method, margin, encode, epochs, rebuild_vocab),
        Command::Train => train(&ctx),
        Command::Eval => {
            let cfg = ctx.config()?;
            let data = ctx.load_city(ctx.city()?, &cfg)?;
            let row = SweepRow {
                outcome: run_experiment(&cfg, &data).map_err(|e| e.to_string()),
                config: cfg,
            };
            if let Err(e) = &row.outcome {
                return Err(Error::Fit(e.clone()));
            }
            let mut buf = Vec::new();
            write_results_csv(std::slice::from_ref(&row), &mut buf)?;
            ctx.emit(&buf)
        }
        Command::Sweep => sweep_cmd(&ctx),
        Command::Transfer => transfer(&ctx),
        Command::Predict { train_city, iterations } => {
            let cfg = ctx.config()?;
            let city = ctx.city()?;
            let eval = ctx.load_city(city, &cfg)?;
            let train = match &train_city {
                Some(t) if t != city => ctx.load_city(t, &cfg)?,
                _ => eval.clone(),
            };
            let n = iterations.unwrap_or(cfg.iterations as usize);
            let map = predict_city(&train, &eval, &cfg, n, DEFAULT_THRESHOLD)?;
            let mut buf = Vec::new();
            map.write_csv(&mut buf)?;
            ctx.emit(&buf)
        }
        Command::Export { input, threshold } => {
            let city = ctx.global.city.first().cloned().unwrap_or_default();
            let res = ctx.res()?;
            let mut map = PredictionMap::read_csv(read_file(&input)?.as_slice(), &city, res, threshold)?;
            if !city.is_empty() {
                if let Ok(bytes) = read_file(&ctx.store.labels_path(&city, res)) {
                    map.labels = Some(read_labels(bytes.as_slice())?);
                }
            }
            ctx.emit(&export_geojson(&map))
        }
        Command::Stats { population } => stats(&ctx, population),
    }
}

fn ingest(ctx: &Ctx, area: Option<String>, geojson: Option<PathBuf>) -> Result<()> {
    let city = ctx.city()?;
    let (objects, source) = match geojson {
        Some(path) => {
            let objs = parse_geojson(&read_file(&path)?)?;
            (objs, json!({"file": path.display().to_string()}))
        }
        None => {
            let area = area.unwrap_or_else(|| city.to_owned());
            let cfg = OverpassConfig::from_env();
            let objs = fetch_overpass(&area, &cfg)?;
            (objs, json!({"overpass": cfg.endpoint, "area": area}))
        }
    };
    ctx.store.write_objects(city, &objects)?;
    ctx.store.update_meta(city, |m| m.source = Some(source))?;
    println!("{city}: {} objects", objects.len());
    Ok(())
}

fn area(ctx: &Ctx, margin: u32) -> Result<()> {
    let city = ctx.city()?;
    let res = ctx.res()?;
    let stations = ctx.store.read_stations(city)?;
    let ds = CityDataset::build(city, stations, res)?;
    let objects = ctx.store.read_objects(city)?;
    let cells = dilate(&ds.cells, margin);
    let buckets = assign_objects(&cells, &objects);
    let mut buf = Vec::new();
    write_labels(&ds.labels, &mut buf)?;
    write_atomic(&ctx.store.labels_path(city, res), &buf)?;
    let mut buf = Vec::new();
    write_buckets(&buckets, &mut buf)?;
    write_atomic(&ctx.store.buckets_path(city, res), &buf)?;
    println!(
        "{city}: {} cells, {} with stations, {} non-empty buckets",
        ds.cells.len(),
        ds.positives().count(),
        buckets.len()
    );
    Ok(())
}

fn all_tag_vocab(ctx: &Ctx, rebuild: bool) -> Result<TagVocabulary> {
    let path = ctx.store.vocab_path();
    if path.exists() && !rebuild {
        return Ok(serde_json::from_slice(&read_file(&path)?)?);
    }
    let mut cities: Vec<String> = std::fs::read_dir(ctx.store.root())
        .map_err(|e| Error::file(ctx.store.root(), e))?
        .filter_map(|e| e.ok())
        .filter(|e| e.path().join("objects.jsonl").exists())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .collect();
    cities.sort();
    let mut objects = Vec::new();
    for c in &cities {
        objects.extend(ctx.store.read_objects(c)?);
    }
    let vocab = build_all_tag_vocab(&objects)?;
    write_atomic(&path, &serde_json::to_vec(&vocab)?)?;
    log::info!("all-tag vocabulary: {} slots from {} cities", vocab.len(), cities.len());
    Ok(vocab)
}

fn embed(ctx: &Ctx, method: RegionMethod, margin: u32, encode: Option<usize>, epochs: usize, rebuild: bool) -> Result<()> {
    let city = ctx.city()?;
    let res = ctx.res()?;
    let labels = read_labels(read_file(&ctx.store.labels_path(city, res))?.as_slice())?;
    let buckets = read_buckets(read_file(&ctx.store.buckets_path(city, res))?.as_slice())?;
    let vocab = match method {
        RegionMethod::St => Some(TagVocabulary::selected()),
        RegionMethod::At => Some(all_tag_vocab(ctx, rebuild)?),
        _ => None,
    };
    let cells = dilate(&labels.keys().copied().collect(), margin);
    let mut table = embed_city(&buckets, &cells, method, vocab.as_ref())?;
    if let Some(dim) = encode {
        let seed = resolve_seed(ctx.global.seed, None);
        let rows: Vec<Vec<f64>> = table.vectors.values().cloned().collect();
        let opts = EncoderOptions {
            epochs,
            ..Default::default()
        };
        let enc = train_encoder(&rows, dim, seed, opts)?;
        write_atomic(&ctx.store.encoder_path(city, method.name(), res), enc.to_json()?.as_bytes())?;
        println!("encoder: {} -> {dim}, final loss {:.3e}, seed {seed}", enc.input_dim, enc.final_loss());
        table = table.encoded(&enc)?;
    }
    let mut buf = Vec::new();
    table.write_csv(&mut buf)?;
    write_atomic(&ctx.store.embedding_path(city, method.name(), res), &buf)?;
    println!("{city}: {} {method} vectors of dimension {}", table.vectors.len(), table.dim());
    Ok(())
}

fn train(ctx: &Ctx) -> Result<()> {
    let cfg = ctx.config()?;
    let data = ctx.load_city(ctx.city()?, &cfg)?;
    let features = data.features(&cfg)?;
    let (sample_seed, model_seed) = iteration_seeds(cfg.seed, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
    let sample = sample_training_set(&data.dataset.labels, cfg.imbalance_ratio, &mut rng)?;
    let (x, y): (Vec<Vec<f64>>, Vec<bool>) = sample
        .iter()
        .map(|c| (features[c].clone(), data.dataset.labels[c]))
        .unzip();
    let mut model = fit_classifier(&x, &y, &ExperimentConfig { seed: model_seed, ..cfg.clone() })?;
    model.config.seed = cfg.seed;
    ctx.emit(model.to_json()?.as_bytes())
}

fn sweep_cmd(ctx: &Ctx) -> Result<()> {
    let path = ctx
        .global
        .config
        .as_ref()
        .ok_or_else(|| Error::config("sweep needs --config with a JSON array of configs"))?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
    let raw: Vec<Value> = serde_json::from_str(&text).map_err(|e| Error::config(format!("invalid sweep grid: {e}")))?;
    let fallback = resolve_seed(ctx.global.seed, None);
    let mut grid = Vec::with_capacity(raw.len());
    for v in raw {
        let explicit = v.get("seed").is_some();
        let mut cfg = ExperimentConfig::from_json(&v.to_string())?;
        if let Some(r) = ctx.global.res {
            cfg.resolution = Resolution::new(r)?;
        }
        if ctx.global.seed.is_some() || !explicit {
            cfg.seed = fallback;
        }
        grid.push(cfg);
    }
    let city = ctx.city()?;
    let mut data: Option<CityData> = None;
    for cfg in &grid {
        let loaded = ctx.load_city(city, cfg)?;
        data = Some(match data {
            None => loaded,
            Some(d) => {
                let mut d = d;
                d.embeddings.extend(loaded.embeddings);
                d
            }
        });
    }
    let data = data.ok_or_else(|| Error::config("sweep grid is empty"))?;
    let rows = sweep(&grid, &data)?;
    let mut buf = Vec::new();
    write_results_csv(&rows, &mut buf)?;
    ctx.emit(&buf)
}

fn transfer(ctx: &Ctx) -> Result<()> {
    let cfg = ctx.config()?;
    if ctx.global.city.len() < 2 {
        return Err(Error::config("transfer needs at least two --city flags"));
    }
    let cities = ctx
        .global
        .city
        .iter()
        .map(|c| ctx.load_city(c, &cfg))
        .collect::<Result<Vec<_>>>()?;
    let matrix = transfer_matrix(&cities, &cfg)?;
    let dir = ctx.global.out.clone().unwrap_or_else(|| PathBuf::from("."));
    for (name, values) in [("transfer_recall.csv", &matrix.recall), ("transfer_accuracy.csv", &matrix.accuracy)] {
        let mut buf = Vec::new();
        matrix.write_csv(values, &mut buf)?;
        write_atomic(&dir.join(name), &buf)?;
    }
    println!("transfer matrix for {} cities written to {}, seed {}", cities.len(), dir.display(), cfg.seed);
    Ok(())
}

fn stats(ctx: &Ctx, population: Vec<(String, u64)>) -> Result<()> {
    if ctx.global.city.is_empty() {
        return Err(Error::config("--city is required"));
    }
    let res = ctx.res()?;
    let population: BTreeMap<String, u64> = population.into_iter().collect();
    let mut reports = Vec::new();
    for city in &ctx.global.city {
        let labels = read_labels(read_file(&ctx.store.labels_path(city, res))?.as_slice())?;
        let stations = ctx.store.read_stations(city)?;
        let ds = CityDataset::from_labels(city, res, labels, stations);
        let buckets = read_buckets(read_file(&ctx.store.buckets_path(city, res))?.as_slice())?;
        reports.push(eda_stats(&ds, population.get(city).copied(), &buckets)?);
    }
    let normalized = normalize_across_cities(&reports);
    let doc = json!({"cities": reports, "normalized_category_means": normalized});
    let mut buf = serde_json::to_vec_pretty(&doc)?;
    buf.push(b'\n');
    ctx.emit(&buf)
}

/// Used by `main`: runs and maps errors to exit status 1.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
