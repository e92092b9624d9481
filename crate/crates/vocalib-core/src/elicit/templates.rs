//! Prompt templates for eliciting probability distributions.
//!
//! Two layouts exist in the wild: everything in a single user message, or
//! the instructions in a system message with the bare input text as the
//! user message. The built-in imdb/emotion/massive templates are provided
//! in both layouts, with their exact original wording.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TemplateError {
    #[error("template has no $text placeholder")]
    MissingPlaceholder,
    #[error("template has {0} $text placeholders, expected exactly 1")]
    DuplicatePlaceholder(usize),
    #[error("input text must be non-empty")]
    EmptyText,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MessageLayout {
    /// Instructions and input text in one user message.
    SingleUserMessage,
    /// Instructions as a system message, input text as the user message.
    SystemPlusUser,
}

/// A prompt with exactly one `$text` placeholder. For `SystemPlusUser`
/// templates the placeholder sits on its own final line; rendering splits
/// there into the (system, user) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PromptTemplate {
    pub task_name: String,
    pub layout: MessageLayout,
    pub template_text: String,
    pub label_list_rendered: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RenderedPrompt {
    Single(String),
    Pair { system: String, user: String },
}

impl PromptTemplate {
    pub fn new(
        task_name: impl Into<String>,
        layout: MessageLayout,
        template_text: impl Into<String>,
        label_list_rendered: impl Into<String>,
    ) -> Result<Self, TemplateError> {
        let template_text = template_text.into();
        match template_text.matches("$text").count() {
            0 => return Err(TemplateError::MissingPlaceholder),
            1 => {}
            n => return Err(TemplateError::DuplicatePlaceholder(n)),
        }
        Ok(Self {
            task_name: task_name.into(),
            layout,
            template_text,
            label_list_rendered: label_list_rendered.into(),
        })
    }

    pub fn render(&self, text: &str) -> Result<RenderedPrompt, TemplateError> {
        if text.is_empty() {
            return Err(TemplateError::EmptyText);
        }
        match self.layout {
            MessageLayout::SingleUserMessage => {
                Ok(RenderedPrompt::Single(self.template_text.replacen("$text", text, 1)))
            }
            MessageLayout::SystemPlusUser => {
                let (before, after) = self
                    .template_text
                    .split_once("$text")
                    .expect("placeholder presence checked in new()");
                let system = before.strip_suffix('\n').unwrap_or(before).to_string();
                Ok(RenderedPrompt::Pair {
                    system,
                    user: format!("{text}{after}"),
                })
            }
        }
    }

    /// The documented retry edit: soften "no other words" to
    /// "remove other words".
    pub fn mutated(&self) -> Self {
        Self {
            template_text: self
                .template_text
                .replace("no other words", "remove other words"),
            ..self.clone()
        }
    }

    pub fn builtin(task_name: &str, layout: MessageLayout) -> Option<Self> {
        let (template_text, label_list): (&str, &str) = match (task_name, layout) {
            ("imdb", MessageLayout::SingleUserMessage) => {
                (IMDB_USER, "(positive or negative)")
            }
            ("imdb", MessageLayout::SystemPlusUser) => (IMDB_SYSTEM, "(negative or positive)"),
            ("emotion", MessageLayout::SingleUserMessage) => {
                (EMOTION_USER, "[sadness, joy, love, anger, fear, surprise]")
            }
            ("emotion", MessageLayout::SystemPlusUser) => {
                (EMOTION_SYSTEM, "[sadness, joy, love, anger, fear, surprise]")
            }
            ("massive", MessageLayout::SingleUserMessage) => (MASSIVE_USER, MASSIVE_LIST_USER),
            ("massive", MessageLayout::SystemPlusUser) => (MASSIVE_SYSTEM, MASSIVE_LIST_SYSTEM),
            _ => return None,
        };
        Some(
            Self::new(task_name, layout, template_text, label_list)
                .expect("built-in templates carry one placeholder"),
        )
    }
}

const IMDB_USER: &str = "Give a binary sentiment label (positive or negative) to the following sentence: $text.

Assign a confidence score (between 0 and 1.0) to this prediction.

Give ONLY the probability distribution over the sentiment labels.

Give ONLY the probability, no other words or explanation.

Provide ONLY the probability in a format of Python dict.";

const EMOTION_USER: &str = "Give an emotion label from a label list [sadness, joy, love, anger, fear, surprise] to the following sentence: $text.

Assign a confidence score (between 0 and 1.0) to this prediction.

Give ONLY the probability distribution over the 6 emotion labels.

Give ONLY the probability, no other words or explanation.

Provide ONLY the probability in a format of Python dict.";

const MASSIVE_LIST_USER: &str = r#"["datetime_query", "iot_hue_lightchange", "transport_ticket",
 "takeaway_query", "qa_stock", "general_greet",
 "recommendation_events", "music_dislikeness", "iot_wemo_off",
 "cooking_recipe", "qa_currency", "transport_traffic",
 "general_quirky", "weather_query", "audio_volume_up",
 "email_addcontact", "takeaway_order", "email_querycontact",
 "iot_hue_lightup", "recommendation_locations",
 "play_audiobook", "lists_createoradd", "news_query",
 "alarm_query", "iot_wemo_on", "general_joke", "qa_definition",
 "social_query", "music_settings", "audio_volume_other",
 "calendar_remove", "iot_hue_lightdim", "calendar_query",
 "email_sendemail", "iot_cleaning", "audio_volume_down",
 "play_radio", "cooking_query", "datetime_convert", "qa_maths",
 "iot_hue_lightoff", "iot_hue_lighton", "transport_query",
 "music_likeness", "email_query", "play_music",
 "audio_volume_mute", "social_post", "alarm_set", "qa_factoid",
 "calendar_set", "play_game", "alarm_remove", "lists_remove",
 "transport_taxi", "recommendation_movies", "iot_coffee",
 "music_query", "play_podcasts", "lists_query"]"#;

const MASSIVE_USER: &str = r#"Give a label from the following 60 intent labels:
["datetime_query", "iot_hue_lightchange", "transport_ticket",
 "takeaway_query", "qa_stock", "general_greet",
 "recommendation_events", "music_dislikeness", "iot_wemo_off",
 "cooking_recipe", "qa_currency", "transport_traffic",
 "general_quirky", "weather_query", "audio_volume_up",
 "email_addcontact", "takeaway_order", "email_querycontact",
 "iot_hue_lightup", "recommendation_locations",
 "play_audiobook", "lists_createoradd", "news_query",
 "alarm_query", "iot_wemo_on", "general_joke", "qa_definition",
 "social_query", "music_settings", "audio_volume_other",
 "calendar_remove", "iot_hue_lightdim", "calendar_query",
 "email_sendemail", "iot_cleaning", "audio_volume_down",
 "play_radio", "cooking_query", "datetime_convert", "qa_maths",
 "iot_hue_lightoff", "iot_hue_lighton", "transport_query",
 "music_likeness", "email_query", "play_music",
 "audio_volume_mute", "social_post", "alarm_set", "qa_factoid",
 "calendar_set", "play_game", "alarm_remove", "lists_remove",
 "transport_taxi", "recommendation_movies", "iot_coffee",
 "music_query", "play_podcasts", "lists_query"]
to the following sentence: $text.

Assign a confidence score (between 0 and 1.0) to this prediction.

Give ONLY the probability distribution over the 60 intent labels.

Give ONLY the probability, no other words or explanation.

Provide ONLY the probability in a format of Python dict."#;

const IMDB_SYSTEM: &str = "Give a binary sentiment label (negative or positive) for a given text.\nAssign a confidence score (between 0 and 1.0) to this prediction.\nGive ONLY the probability distribution over the 2 sentiment labels.\nGive ONLY the probability, no other words or explanation.\n Provide ONLY the probability in a format of Python dict.\n$text";

const EMOTION_SYSTEM: &str = "Give an emotion label from a label list [sadness, joy, love, anger, fear, surprise] for a given text.\nAssign a confidence score (between 0 and 1.0) to this prediction.\nGive ONLY the probability distribution over the 6 emotion labels.\nGive ONLY the probability, no other words or explanation.\n Provide ONLY the probability in a format of Python dict.\n$text";

const MASSIVE_LIST_SYSTEM: &str = "['datetime_query','iot_hue_lightchange','transport_ticket','takeaway_query', 'qa_stock','general_greet','recommendation_events','music_dislikeness', 'iot_wemo_off','cooking_recipe','qa_currency','transport_traffic', 'general_quirky','weather_query','audio_volume_up','email_addcontact', 'takeaway_order', 'email_querycontact','iot_hue_lightup', 'recommendation_locations', 'play_audiobook', 'lists_createoradd', 'news_query', 'alarm_query','iot_wemo_on', 'general_joke', 'qa_definition', 'social_query', 'music_settings', 'audio_volume_other','calendar_remove', 'iot_hue_lightdim', 'calendar_query', 'email_sendemail', 'iot_cleaning', 'audio_volume_down','play_radio', 'cooking_query', 'datetime_convert', 'qa_maths', 'iot_hue_lightoff', 'iot_hue_lighton', 'transport_query', 'music_likeness', 'email_query', 'play_music', 'audio_volume_mute', 'social_post', 'alarm_set', 'qa_factoid', 'calendar_set','play_game', 'alarm_remove', 'lists_remove', 'transport_taxi', 'recommendation_movies', 'iot_coffee', 'music_query','play_podcasts', 'lists_query']";

const MASSIVE_SYSTEM: &str = "Give a label from the following 60 intent labels ['datetime_query','iot_hue_lightchange','transport_ticket','takeaway_query', 'qa_stock','general_greet','recommendation_events','music_dislikeness', 'iot_wemo_off','cooking_recipe','qa_currency','transport_traffic', 'general_quirky','weather_query','audio_volume_up','email_addcontact', 'takeaway_order', 'email_querycontact','iot_hue_lightup', 'recommendation_locations', 'play_audiobook', 'lists_createoradd', 'news_query', 'alarm_query','iot_wemo_on', 'general_joke', 'qa_definition', 'social_query', 'music_settings', 'audio_volume_other','calendar_remove', 'iot_hue_lightdim', 'calendar_query', 'email_sendemail', 'iot_cleaning', 'audio_volume_down','play_radio', 'cooking_query', 'datetime_convert', 'qa_maths', 'iot_hue_lightoff', 'iot_hue_lighton', 'transport_query', 'music_likeness', 'email_query', 'play_music', 'audio_volume_mute', 'social_post', 'alarm_set', 'qa_factoid', 'calendar_set','play_game', 'alarm_remove', 'lists_remove', 'transport_taxi', 'recommendation_movies', 'iot_coffee', 'music_query','play_podcasts', 'lists_query'] for a given text.\nAssign a confidence score (between 0 and 1.0) to this prediction.\nGive ONLY the probability distribution over the 60 intent labels.\nGive ONLY the probability, no other words or explanation.\n Provide ONLY the probability in a format of Python dict.\n$text";
