//! Pipeline orchestration binary. Every subcommand is idempotent given the
//! same inputs, config and seed: outputs are written atomically and each
//! output directory gets a `run_manifest.json` recording the config hash
//! and input digests.

mod commands;
mod gen_corpus;
mod live;
mod util;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "vastim", version, about = "Affective multimedia stimulus pipeline")]
struct Cli {
    /// Pipeline config file (TOML); defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker cap for data-parallel stages (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build search requests for every keyword, collect video ids and
    /// comments through the configured transport, and write a crawl
    /// manifest.
    Crawl {
        /// Keyword list, one word per line.
        #[arg(long)]
        keywords: PathBuf,
        /// Fixture directory (search/, comments/). Required unless the
        /// config selects the live transport.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Environment variable holding the API key for live crawling.
        #[arg(long, default_value = "VASTIM_API_KEY")]
        api_key_env: String,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Score comment batches against a sentiment lexicon and pool per-video
    /// polarity.
    Sentiment {
        /// Comments root (fixture layout) or a comments JSONL file.
        #[arg(long)]
        comments: PathBuf,
        /// Tab-separated `word<TAB>score` lexicon.
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Cut one clip into overlapping fixed-duration segments and write the
    /// segment manifest.
    Segment {
        #[arg(long)]
        audio: PathBuf,
        #[arg(long)]
        video: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Extract per-segment audio and video feature blocks.
    Features {
        /// Directory of paired <stem>.wav / <stem>.y4m clips.
        #[arg(long, conflicts_with_all = ["audio", "video"])]
        media: Option<PathBuf>,
        /// Single clip: decoded audio.
        #[arg(long, requires = "video")]
        audio: Option<PathBuf>,
        /// Single clip: decoded frames.
        #[arg(long, requires = "audio")]
        video: Option<PathBuf>,
        #[arg(long)]
        out_dir: PathBuf,
        /// Also dump per-frame traces (boundary profile, rhythm,
        /// brightness, motion) per segment.
        #[arg(long)]
        traces: bool,
    },
    /// Fit the per-block PCA models and score every stimulus on the 1..9
    /// valence/arousal plane.
    Score {
        /// features.json produced by `features`.
        #[arg(long)]
        features: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Select stimuli whose scores fall inside the norm box of at least one
    /// emotion word; report quadrant counts.
    Select {
        /// Emotion-word list, one word per line.
        #[arg(long)]
        words: PathBuf,
        /// Norms CSV: word,v_mean,v_sd,a_mean,a_sd.
        #[arg(long)]
        norms: PathBuf,
        /// scores.csv produced by `score`.
        #[arg(long)]
        scores: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Run the balanced-subsample SVM harness over rated stimuli.
    Classify {
        /// projections.csv produced by `score` (PCA feature space).
        #[arg(long, conflicts_with = "features")]
        projections: Option<PathBuf>,
        /// features.json for raw-vector classification instead.
        #[arg(long)]
        features: Option<PathBuf>,
        /// Ratings CSV: stimulus_id,culture,V,A,D,L,F.
        #[arg(long)]
        ratings: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Summarize a ratings CSV into the six-statistic table.
    Stats {
        #[arg(long)]
        ratings: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Generate the bundled synthetic WAV/Y4M corpus with matching ratings.
    GenCorpus {
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 20)]
        clips: usize,
        /// Clip length in seconds.
        #[arg(long, default_value_t = 10.0)]
        duration: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 8000)]
        sample_rate: u32,
        #[arg(long, default_value_t = 10)]
        fps: u32,
        #[arg(long, default_value_t = 64)]
        width: u32,
        #[arg(long, default_value_t = 48)]
        height: u32,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            util::emit_error("usage", &e.to_string());
            return ExitCode::from(1);
        }
    };

    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }

    let config = match commands::load_config(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => return e.emit(),
    };

    let result = match cli.command {
        Command::Crawl { keywords, fixtures, api_key_env, out_dir } => {
            commands::crawl(&config, &keywords, fixtures.as_deref(), &api_key_env, &out_dir)
        }
        Command::Sentiment { comments, lexicon, out_dir } => {
            commands::sentiment(&config, &comments, &lexicon, &out_dir)
        }
        Command::Segment { audio, video, out_dir } => {
            commands::segment(&config, &audio, &video, &out_dir)
        }
        Command::Features { media, audio, video, out_dir, traces } => {
            commands::features(&config, media.as_deref(), audio.as_deref(), video.as_deref(), &out_dir, traces)
        }
        Command::Score { features, out_dir } => commands::score(&config, &features, &out_dir),
        Command::Select { words, norms, scores, out_dir } => {
            commands::select(&config, &words, &norms, &scores, &out_dir)
        }
        Command::Classify { projections, features, ratings, out_dir } => commands::classify(
            &config,
            projections.as_deref(),
            features.as_deref(),
            &ratings,
            &out_dir,
        ),
        Command::Stats { ratings, out_dir } => commands::stats(&config, &ratings, &out_dir),
        Command::GenCorpus {
            out_dir,
            clips,
            duration,
            seed,
            sample_rate,
            fps,
            width,
            height,
        } => gen_corpus::generate(&gen_corpus::CorpusSpec {
            out_dir,
            clips,
            duration,
            seed,
            sample_rate,
            fps,
            width,
            height,
        }),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => e.emit(),
    }
}
