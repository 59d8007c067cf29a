//! On-disk cache of balls keyed by model content and radius.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rdconj_core::group::{Ball, GroupModel};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Parent-tree entries re-checked when a cached ball is loaded.
pub const VERIFY_SAMPLES: usize = 100;

#[derive(Serialize, Deserialize)]
struct CachedBall {
    model_hash: String,
    radius: u32,
    ball: Ball,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Miss,
    /// A cached file existed but failed verification.
    Rebuilt(String),
    Disabled,
}

impl CacheOutcome {
    pub fn describe(&self) -> String {
        match self {
            CacheOutcome::Hit => "hit".into(),
            CacheOutcome::Miss => "miss".into(),
            CacheOutcome::Rebuilt(why) => format!("rebuilt: {why}"),
            CacheOutcome::Disabled => "off".into(),
        }
    }
}

pub struct BallCache {
    dir: Option<PathBuf>,
    seed: u64,
    log: Mutex<Vec<CacheOutcome>>,
}

pub fn model_hash(model: &GroupModel) -> String {
    let bytes = serde_json::to_vec(model).expect("models serialize");
    hex::encode(Sha256::digest(bytes))
}

impl BallCache {
    pub fn new(dir: Option<PathBuf>, seed: u64) -> Self {
        BallCache { dir, seed, log: Mutex::new(Vec::new()) }
    }

    pub fn path(dir: &Path, hash: &str, radius: u32) -> PathBuf {
        dir.join(format!("ball-{}-r{radius}.json", &hash[..16]))
    }

    /// Outcomes of every request so far, in order.
    pub fn outcomes(&self) -> Vec<CacheOutcome> {
        self.log.lock().expect("cache log").clone()
    }

    fn record(&self, o: CacheOutcome) {
        self.log.lock().expect("cache log").push(o);
    }

    /// Loads the ball when a verified copy exists, else builds and stores
    /// it. Corrupt or mismatched files are discarded.
    pub fn ball(&self, model: &GroupModel, radius: u32, cap: usize) -> Result<Ball, CliError> {
        let Some(dir) = &self.dir else {
            self.record(CacheOutcome::Disabled);
            return Ok(Ball::build(model, radius, cap)?);
        };
        let hash = model_hash(model);
        let path = Self::path(dir, &hash, radius);
        let outcome = match fs::read(&path) {
            Err(_) => CacheOutcome::Miss,
            Ok(bytes) => match self.verify(model, &hash, radius, cap, &bytes) {
                Ok(ball) => {
                    self.record(CacheOutcome::Hit);
                    return Ok(ball);
                }
                Err(why) => CacheOutcome::Rebuilt(why),
            },
        };
        let ball = Ball::build(model, radius, cap)?;
        fs::create_dir_all(dir)?;
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec(&CachedBall { model_hash: hash, radius, ball: ball.clone() }).expect("balls serialize"))?;
        fs::rename(&tmp, &path)?;
        self.record(outcome);
        Ok(ball)
    }

    fn verify(&self, model: &GroupModel, hash: &str, radius: u32, cap: usize, bytes: &[u8]) -> Result<Ball, String> {
        let cached: CachedBall = serde_json::from_slice(bytes).map_err(|e| format!("unreadable cache file: {e}"))?;
        if cached.model_hash != hash {
            return Err("model hash mismatch".into());
        }
        if cached.radius != radius || cached.ball.radius() != radius {
            return Err("radius mismatch".into());
        }
        let mut ball = cached.ball;
        if !ball.has_consistent_shape() || ball.len() > cap {
            return Err("size outside cap".into());
        }
        ball.reindex();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let n = ball.len();
        let sample: Vec<usize> =
            if n <= VERIFY_SAMPLES { (0..n).collect() } else { (0..VERIFY_SAMPLES).map(|_| rng.random_range(0..n)).collect() };
        if let Some(&i) = sample.iter().find(|&&i| !ball.verify_entry(model, i)) {
            return Err(format!("parent-tree entry {i} failed verification"));
        }
        Ok(ball)
    }
}
