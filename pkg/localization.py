import json
import locale
import os
from pathlib import Path

LANG_ENV = "MUENCH_LANG"
SUPPORTED = ("en", "ja")

class Localizer:
    def __init__(self, language=None):
        self.translations = {}
        self.current_language = language if language else self._detect_system_language()
        self._load_translations()

    def _detect_system_language(self):
        """MUENCH_LANG → ロケール → 英語 の順で決定"""
        env = os.environ.get(LANG_ENV, "").strip().lower()
        if env in SUPPORTED:
            return env
        try:
            system_locale = locale.getlocale()[0]
            if system_locale and system_locale.lower().startswith("ja"):
                return "ja"
        except (ValueError, TypeError):
            pass
        return "en"  # デフォルトは英語

    def _load_translations(self):
        """localize.jsonから翻訳データを読み込み"""
        try:
            localize_path = Path(__file__).parent / "localize.json"
            with open(localize_path, "r", encoding="utf-8") as f:
                self.translations = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            print(f"Warning: Could not load localize.json: {e}")
            self.translations = {}

    def get_text(self, key: str, **kwargs) -> str:
        """キーの翻訳を取得し、kwargs があれば format で埋め込む"""
        text = self.translations.get(self.current_language, {}).get(key)
        if text is None:
            text = self.translations.get("en", {}).get(key, key)
        return text.format(**kwargs) if kwargs else text

    def set_language(self, language: str):
        """言語を手動で設定"""
        if language in self.translations:
            self.current_language = language

    def get_current_language(self):
        return self.current_language

# グローバルなローカライザーインスタンス
_localizer = None

def initialize_localizer(language=None):
    """ローカライザーを初期化"""
    global _localizer
    _localizer = Localizer(language)

def _(key: str, **kwargs) -> str:
    """翻訳テキストを取得するための短縮関数"""
    if _localizer is None:
        initialize_localizer()
    return _localizer.get_text(key, **kwargs)
