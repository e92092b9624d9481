//! Chat-endpoint client with parse-aware retries.
//!
//! The wire shape is the generic chat-completion one: `{model, messages,
//! temperature, max_tokens}` in, `{choices: [{message: {content}}]}` out.
//! Credentials are read from an environment variable named in the config,
//! never from the config itself.

use crate::elicit::templates::{PromptTemplate, RenderedPrompt, TemplateError};
use crate::parser::{parse_response, RawResponse};
use serde::{Deserialize, Serialize};
use std::time::Duration;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{0}")]
pub struct TransportError(pub String);

#[derive(Debug, Error)]
pub enum ElicitError {
    #[error("credential environment variable {0:?} is not set")]
    Auth(String),
    #[error("transport failed on all {attempts} attempts; last error: {last}")]
    Transport { attempts: usize, last: String },
    #[error("failed to build http client: {0}")]
    Http(String),
    #[error(transparent)]
    Template(#[from] TemplateError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: String,
    pub content: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatRequest {
    pub model: String,
    pub messages: Vec<ChatMessage>,
    pub temperature: f64,
    pub max_tokens: u32,
}

/// Anything that can answer a chat request with reply text.
pub trait ChatEndpoint {
    fn complete(&self, request: &ChatRequest) -> Result<String, TransportError>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetryPolicy {
    pub max_attempts: usize,
    /// On the second and later attempts, swap "no other words" for
    /// "remove other words" in the prompt.
    pub mutate_on_retry: bool,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        Self {
            max_attempts: 3,
            mutate_on_retry: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub model_id: String,
    pub token_temperature: f64,
    pub max_tokens: u32,
}

impl GenConfig {
    pub fn new(model_id: impl Into<String>, token_temperature: f64) -> Self {
        Self {
            model_id: model_id.into(),
            token_temperature,
            max_tokens: 256,
        }
    }
}

/// Elicit one reply, retrying while the reply fails to parse. The last
/// reply is returned whether or not it parsed; only a run of pure
/// transport failures is an error.
pub fn elicit(
    client: &dyn ChatEndpoint,
    template: &PromptTemplate,
    text: &str,
    expected_labels: &[String],
    policy: &RetryPolicy,
    gen: &GenConfig,
) -> Result<RawResponse, ElicitError> {
    let attempts = policy.max_attempts.max(1);
    let mutated = template.mutated();
    let mut last_reply: Option<String> = None;
    let mut last_err: Option<TransportError> = None;
    for attempt in 1..=attempts {
        let active = if attempt >= 2 && policy.mutate_on_retry {
            &mutated
        } else {
            template
        };
        let messages = match active.render(text)? {
            RenderedPrompt::Single(content) => vec![ChatMessage {
                role: "user".to_string(),
                content,
            }],
            RenderedPrompt::Pair { system, user } => vec![
                ChatMessage {
                    role: "system".to_string(),
                    content: system,
                },
                ChatMessage {
                    role: "user".to_string(),
                    content: user,
                },
            ],
        };
        let request = ChatRequest {
            model: gen.model_id.clone(),
            messages,
            temperature: gen.token_temperature,
            max_tokens: gen.max_tokens,
        };
        match client.complete(&request) {
            Ok(reply) => {
                let parsed = parse_response(&reply, expected_labels).is_parsed();
                last_reply = Some(reply);
                if parsed {
                    break;
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    match last_reply {
        Some(reply) => Ok(RawResponse {
            text: reply,
            model_id: gen.model_id.clone(),
            token_temperature: gen.token_temperature,
        }),
        None => Err(ElicitError::Transport {
            attempts,
            last: last_err.map(|e| e.to_string()).unwrap_or_default(),
        }),
    }
}

/// Elicit a batch with at most `max_in_flight` concurrent requests.
/// Results come back in input order.
pub fn elicit_batch(
    client: &(dyn ChatEndpoint + Sync),
    template: &PromptTemplate,
    texts: &[String],
    expected_labels: &[String],
    policy: &RetryPolicy,
    gen: &GenConfig,
    max_in_flight: usize,
) -> Vec<Result<RawResponse, ElicitError>> {
    let limit = max_in_flight.max(1);
    let mut results: Vec<Result<RawResponse, ElicitError>> = Vec::with_capacity(texts.len());
    for chunk in texts.chunks(limit) {
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunk
                .iter()
                .map(|text| {
                    scope.spawn(move || elicit(client, template, text, expected_labels, policy, gen))
                })
                .collect();
            for handle in handles {
                results.push(handle.join().expect("elicit worker panicked"));
            }
        });
    }
    results
}

/// Where and how to reach the endpoint. `credential_env` names the
/// environment variable holding the bearer token.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndpointConfig {
    pub base_url: String,
    pub credential_env: String,
    pub timeout_secs: u64,
}

impl Default for EndpointConfig {
    fn default() -> Self {
        Self {
            base_url: String::new(),
            credential_env: "VOCALIB_API_KEY".to_string(),
            timeout_secs: 30,
        }
    }
}

pub struct HttpChatClient {
    config: EndpointConfig,
    token: String,
    http: reqwest::blocking::Client,
}

impl HttpChatClient {
    pub fn new(config: EndpointConfig) -> Result<Self, ElicitError> {
        let token = std::env::var(&config.credential_env)
            .map_err(|_| ElicitError::Auth(config.credential_env.clone()))?;
        let http = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(config.timeout_secs))
            .build()
            .map_err(|e| ElicitError::Http(e.to_string()))?;
        Ok(Self { config, token, http })
    }
}

#[derive(Deserialize)]
struct WireResponse {
    choices: Vec<WireChoice>,
}

#[derive(Deserialize)]
struct WireChoice {
    message: WireMessage,
}

#[derive(Deserialize)]
struct WireMessage {
    content: String,
}

fn extract_content(body: &str) -> Result<String, TransportError> {
    let parsed: WireResponse =
        serde_json::from_str(body).map_err(|e| TransportError(format!("bad response body: {e}")))?;
    parsed
        .choices
        .into_iter()
        .next()
        .map(|c| c.message.content)
        .ok_or_else(|| TransportError("response had no choices".to_string()))
}

impl ChatEndpoint for HttpChatClient {
    fn complete(&self, request: &ChatRequest) -> Result<String, TransportError> {
        let response = self
            .http
            .post(&self.config.base_url)
            .bearer_auth(&self.token)
            .json(request)
            .send()
            .map_err(|e| TransportError(e.to_string()))?;
        let status = response.status();
        if !status.is_success() {
            return Err(TransportError(format!("http status {status}")));
        }
        let body = response.text().map_err(|e| TransportError(e.to_string()))?;
        extract_content(&body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elicit::templates::MessageLayout;
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Mutex;

    /// Replays a fixed script of replies and records every request.
    struct ScriptedEndpoint {
        script: Vec<Result<String, TransportError>>,
        cursor: AtomicUsize,
        seen: Mutex<Vec<ChatRequest>>,
    }

    impl ScriptedEndpoint {
        fn new(script: Vec<Result<String, TransportError>>) -> Self {
            Self {
                script,
                cursor: AtomicUsize::new(0),
                seen: Mutex::new(Vec::new()),
            }
        }

        fn calls(&self) -> usize {
            self.seen.lock().unwrap().len()
        }
    }

    impl ChatEndpoint for ScriptedEndpoint {
        fn complete(&self, request: &ChatRequest) -> Result<String, TransportError> {
            self.seen.lock().unwrap().push(request.clone());
            let idx = self.cursor.fetch_add(1, Ordering::SeqCst);
            self.script
                .get(idx)
                .cloned()
                .unwrap_or_else(|| Err(TransportError("script exhausted".to_string())))
        }
    }

    fn sentiment() -> Vec<String> {
        vec!["positive".to_string(), "negative".to_string()]
    }

    fn imdb_template() -> PromptTemplate {
        PromptTemplate::builtin("imdb", MessageLayout::SingleUserMessage).unwrap()
    }

    const GOOD: &str = "{'positive': 0.9, 'negative': 0.1}";

    #[test]
    fn first_reply_parseable_takes_one_attempt() {
        let endpoint = ScriptedEndpoint::new(vec![Ok(GOOD.to_string())]);
        let out = elicit(
            &endpoint,
            &imdb_template(),
            "fine film",
            &sentiment(),
            &RetryPolicy::default(),
            &GenConfig::new("test-model", 0.0),
        )
        .unwrap();
        assert_eq!(out.text, GOOD);
        assert_eq!(out.model_id, "test-model");
        assert_eq!(endpoint.calls(), 1);
    }

    #[test]
    fn second_attempt_uses_mutated_prompt() {
        let endpoint = ScriptedEndpoint::new(vec![
            Ok("cannot say".to_string()),
            Ok(GOOD.to_string()),
        ]);
        let out = elicit(
            &endpoint,
            &imdb_template(),
            "fine film",
            &sentiment(),
            &RetryPolicy::default(),
            &GenConfig::new("m", 0.0),
        )
        .unwrap();
        assert_eq!(out.text, GOOD);
        let seen = endpoint.seen.lock().unwrap();
        assert_eq!(seen.len(), 2);
        assert!(seen[0].messages[0].content.contains("no other words"));
        assert!(seen[1].messages[0].content.contains("remove other words"));
    }

    #[test]
    fn mutation_can_be_disabled() {
        let endpoint = ScriptedEndpoint::new(vec![
            Ok("cannot say".to_string()),
            Ok(GOOD.to_string()),
        ]);
        let policy = RetryPolicy {
            mutate_on_retry: false,
            ..RetryPolicy::default()
        };
        elicit(
            &endpoint,
            &imdb_template(),
            "fine film",
            &sentiment(),
            &policy,
            &GenConfig::new("m", 0.0),
        )
        .unwrap();
        let seen = endpoint.seen.lock().unwrap();
        assert!(seen[1].messages[0].content.contains("no other words"));
    }

    #[test]
    fn all_malformed_returns_last_reply() {
        let endpoint = ScriptedEndpoint::new(vec![
            Ok("first prose".to_string()),
            Ok("second prose".to_string()),
            Ok("third prose".to_string()),
            Ok("never reached".to_string()),
        ]);
        let out = elicit(
            &endpoint,
            &imdb_template(),
            "fine film",
            &sentiment(),
            &RetryPolicy::default(),
            &GenConfig::new("m", 0.0),
        )
        .unwrap();
        // attempts are capped; the caller sees the last reply as data
        assert_eq!(out.text, "third prose");
        assert_eq!(endpoint.calls(), 3);
    }

    #[test]
    fn pure_transport_failure_is_an_error() {
        let endpoint = ScriptedEndpoint::new(vec![
            Err(TransportError("boom 1".to_string())),
            Err(TransportError("boom 2".to_string())),
            Err(TransportError("boom 3".to_string())),
        ]);
        let err = elicit(
            &endpoint,
            &imdb_template(),
            "fine film",
            &sentiment(),
            &RetryPolicy::default(),
            &GenConfig::new("m", 0.0),
        )
        .unwrap_err();
        match err {
            ElicitError::Transport { attempts, last } => {
                assert_eq!(attempts, 3);
                assert_eq!(last, "boom 3");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn transport_failure_then_success_recovers() {
        let endpoint = ScriptedEndpoint::new(vec![
            Err(TransportError("flaky".to_string())),
            Ok(GOOD.to_string()),
        ]);
        let out = elicit(
            &endpoint,
            &imdb_template(),
            "fine film",
            &sentiment(),
            &RetryPolicy::default(),
            &GenConfig::new("m", 0.0),
        )
        .unwrap();
        assert_eq!(out.text, GOOD);
        assert_eq!(endpoint.calls(), 2);
    }

    #[test]
    fn system_layout_sends_two_messages() {
        let endpoint = ScriptedEndpoint::new(vec![Ok(GOOD.to_string())]);
        let tmpl = PromptTemplate::builtin("imdb", MessageLayout::SystemPlusUser).unwrap();
        elicit(
            &endpoint,
            &tmpl,
            "fine film",
            &sentiment(),
            &RetryPolicy::default(),
            &GenConfig::new("m", 1.0),
        )
        .unwrap();
        let seen = endpoint.seen.lock().unwrap();
        assert_eq!(seen[0].messages.len(), 2);
        assert_eq!(seen[0].messages[0].role, "system");
        assert_eq!(seen[0].messages[1].role, "user");
        assert_eq!(seen[0].messages[1].content, "fine film");
        assert_eq!(seen[0].temperature, 1.0);
    }

    /// Deterministic per-request endpoint: echoes the user text after a
    /// valid map so batch ordering is observable.
    struct EchoEndpoint;

    impl ChatEndpoint for EchoEndpoint {
        fn complete(&self, request: &ChatRequest) -> Result<String, TransportError> {
            let user = &request.messages.last().unwrap().content;
            Ok(format!("{GOOD} // {user}"))
        }
    }

    #[test]
    fn batch_results_in_input_order() {
        let texts: Vec<String> = (0..9).map(|i| format!("text number {i}")).collect();
        let results = elicit_batch(
            &EchoEndpoint,
            &imdb_template(),
            &texts,
            &sentiment(),
            &RetryPolicy::default(),
            &GenConfig::new("m", 0.0),
            4,
        );
        assert_eq!(results.len(), 9);
        for (i, result) in results.iter().enumerate() {
            assert!(result.as_ref().unwrap().text.contains(&format!("text number {i}")));
        }
    }

    #[test]
    fn missing_credential_is_auth_error() {
        let config = EndpointConfig {
            base_url: "http://localhost:0/v1/chat".to_string(),
            credential_env: "VOCALIB_TEST_UNSET_CREDENTIAL_XYZ".to_string(),
            timeout_secs: 1,
        };
        match HttpChatClient::new(config) {
            Err(ElicitError::Auth(var)) => assert_eq!(var, "VOCALIB_TEST_UNSET_CREDENTIAL_XYZ"),
            other => panic!("expected auth error, got {:?}", other.err()),
        }
    }

    #[test]
    fn request_wire_shape() {
        let request = ChatRequest {
            model: "m1".to_string(),
            messages: vec![ChatMessage {
                role: "user".to_string(),
                content: "hi".to_string(),
            }],
            temperature: 0.0,
            max_tokens: 256,
        };
        let value = serde_json::to_value(&request).unwrap();
        assert_eq!(value["model"], "m1");
        assert_eq!(value["messages"][0]["role"], "user");
        assert_eq!(value["messages"][0]["content"], "hi");
        assert_eq!(value["temperature"], 0.0);
        assert_eq!(value["max_tokens"], 256);
    }

    #[test]
    fn response_wire_shape() {
        let body = r#"{"choices": [{"message": {"role": "assistant", "content": "{'positive': 1.0}"}}]}"#;
        assert_eq!(extract_content(body).unwrap(), "{'positive': 1.0}");
        assert!(extract_content(r#"{"choices": []}"#).is_err());
        assert!(extract_content("not json").is_err());
    }
}
