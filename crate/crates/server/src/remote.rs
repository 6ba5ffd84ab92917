//! HTTP-backed providers. Each batch is one JSON POST; transport failures
//! and non-2xx answers surface as `ProviderUnavailable`.
//!
//! These use the blocking client and must be called off the async runtime
//! (the server always runs provider batches under `spawn_blocking`).

use std::time::Duration;

use happier_core::chem::{write_sdf, LigandStructure};
use happier_core::criteria::{
    CriteriaError, DockingBatch, DockingProvider, ImpactBatch, ImpactProvider, ImpactRequest, ProteinRef,
};
use happier_core::linkography::{EmbeddingProvider, LinkographyError};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30);

fn post_json<B: Serialize, R: DeserializeOwned>(url: &str, timeout: Duration, body: &B) -> Result<R, String> {
    // Built per batch: the blocking client owns a runtime that must not be
    // dropped from async context, and batches are slow anyway.
    let client = reqwest::blocking::Client::builder()
        .timeout(timeout)
        .build()
        .map_err(|e| e.to_string())?;
    let resp = client.post(url).json(body).send().map_err(|e| {
        if e.is_timeout() {
            format!("timed out after {timeout:?}")
        } else {
            e.to_string()
        }
    })?;
    let status = resp.status();
    if !status.is_success() {
        return Err(format!("{url} answered {status}"));
    }
    resp.json::<R>().map_err(|e| format!("bad response body: {e}"))
}

#[derive(Debug, Clone)]
pub struct RemoteImpactProvider {
    url: String,
    timeout: Duration,
}

impl RemoteImpactProvider {
    pub fn new(url: impl Into<String>) -> Self {
        Self {
            url: url.into(),
            timeout: DEFAULT_TIMEOUT,
        }
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }
}

#[derive(Serialize)]
struct ImpactBody<'a> {
    center: &'a str,
    impact_text: &'a str,
    candidates: Vec<&'a str>,
}

impl ImpactProvider for RemoteImpactProvider {
    fn id(&self) -> &str {
        &self.url
    }

    fn assess(&self, request: &ImpactRequest) -> Result<ImpactBatch, CriteriaError> {
        let body = ImpactBody {
            center: &request.center.id,
            impact_text: &request.impact_text,
            candidates: request.candidates.iter().map(|c| c.id.as_str()).collect(),
        };
        post_json(&self.url, self.timeout, &body).map_err(CriteriaError::ProviderUnavailable)
    }
}

#[derive(Debug, Clone)]
pub struct RemoteDockingProvider {
    url: String,
    timeout: Duration,
}

impl RemoteDockingProvider {
    pub fn new(url: impl Into<String>) -> Self {
        Self {
            url: url.into(),
            timeout: DEFAULT_TIMEOUT,
        }
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }
}

#[derive(Serialize)]
struct DockingBody<'a> {
    ligand_sdf: String,
    proteins: Vec<&'a str>,
}

impl DockingProvider for RemoteDockingProvider {
    fn id(&self) -> &str {
        &self.url
    }

    fn dock(&self, ligand: &LigandStructure, proteins: &[ProteinRef]) -> Result<DockingBatch, CriteriaError> {
        let body = DockingBody {
            ligand_sdf: write_sdf(ligand),
            proteins: proteins.iter().map(|p| p.id.as_str()).collect(),
        };
        post_json(&self.url, self.timeout, &body).map_err(CriteriaError::ProviderUnavailable)
    }
}

#[derive(Debug, Clone)]
pub struct RemoteEmbedder {
    url: String,
    timeout: Duration,
}

impl RemoteEmbedder {
    pub fn new(url: impl Into<String>) -> Self {
        Self {
            url: url.into(),
            timeout: DEFAULT_TIMEOUT,
        }
    }
}

#[derive(Serialize)]
struct EmbedBody<'a> {
    texts: &'a [String],
}

#[derive(Deserialize)]
struct EmbedResponse {
    embeddings: Vec<Vec<f64>>,
}

impl EmbeddingProvider for RemoteEmbedder {
    fn id(&self) -> &str {
        &self.url
    }

    fn embed_texts(&self, texts: &[String]) -> Result<Vec<Vec<f64>>, LinkographyError> {
        let resp: EmbedResponse =
            post_json(&self.url, self.timeout, &EmbedBody { texts }).map_err(LinkographyError::ProviderUnavailable)?;
        if resp.embeddings.len() != texts.len() {
            return Err(LinkographyError::InvalidEmbedding(format!(
                "{} embeddings for {} texts",
                resp.embeddings.len(),
                texts.len()
            )));
        }
        Ok(resp.embeddings)
    }
}
