"""
Internationalization Manager (i18n)
Detects system locale (or VFREE_LANG) and serves the CLI status lines.
"""
import locale
import logging
import os

logger = logging.getLogger("i18n_manager")

# Dictionary of all texts in the app
# Structure: "key": {"en": "English Text", "es": "Texto en Español"}
TRANSLATIONS = {
    # --- COMMON ---
    "loading": {
        "en": "📂 Loading {}",
        "es": "📂 Cargando {}"
    },
    "written": {
        "en": "💾 Written to {}",
        "es": "💾 Guardado en {}"
    },
    "error": {
        "en": "❌ Error: {}",
        "es": "❌ Error: {}"
    },
    "budget_exceeded": {
        "en": "⏱️ Budget exhausted: {}",
        "es": "⏱️ Presupuesto agotado: {}"
    },

    # --- SOLVERS ---
    "solve_done": {
        "en": "✅ Cover found: {} matching edges, {} S-links, {} degree-3 T-nodes covered",
        "es": "✅ Cobertura encontrada: {} aristas de emparejamiento, {} S-enlaces, {} nodos T de grado 3 cubiertos"
    },
    "solve_nothing": {
        "en": "💡 No T-node has degree 3; the empty cover is written.",
        "es": "💡 Ningún nodo T tiene grado 3; se escribe la cobertura vacía."
    },
    "extmatch_done": {
        "en": "✅ Extended matching: {} hyperedges, {} pairs, {} nodes covered",
        "es": "✅ Emparejamiento extendido: {} hiperaristas, {} pares, {} nodos cubiertos"
    },
    "reduce_done": {
        "en": "✅ Gadget graph: {} S-nodes, {} T-nodes, {} edges",
        "es": "✅ Grafo de gadgets: {} nodos S, {} nodos T, {} aristas"
    },

    # --- ORACLE ---
    "oracle_yes": {
        "en": "✅ YES: witness with {} elements",
        "es": "✅ SÍ: testigo con {} elementos"
    },
    "oracle_no": {
        "en": "🚫 NO: {} has no solution",
        "es": "🚫 NO: {} no tiene solución"
    },

    # --- VERIFY ---
    "verify_ok": {
        "en": "✅ Certificate accepted ({})",
        "es": "✅ Certificado aceptado ({})"
    },
    "verify_failed": {
        "en": "❌ Certificate rejected ({}): {} violation(s)",
        "es": "❌ Certificado rechazado ({}): {} violación(es)"
    },

    # --- GEN ---
    "gen_done": {
        "en": "🎲 Generated {} instance with seed {}",
        "es": "🎲 Instancia {} generada con semilla {}"
    },
}


LANGUAGES = ("en", "es")


def get_system_language():
    """VFREE_LANG if set, else the system locale; defaults to 'en'."""
    forced = os.getenv("VFREE_LANG", "").strip().lower()
    if forced in LANGUAGES:
        return forced
    try:
        # e.g. ('es_ES', 'UTF-8')
        lang_code = locale.getlocale()[0] or ""
    except ValueError:
        return "en"
    return "es" if lang_code.lower().startswith("es") else "en"


CURRENT_LANG = get_system_language()


def t(key, *args):
    """Status line for `key` in CURRENT_LANG, English when untranslated."""
    entry = TRANSLATIONS.get(key)
    if entry is None:
        logger.debug("no message for key %r", key)
        return " ".join([key, *map(str, args)])
    text = entry.get(CURRENT_LANG) or entry["en"]
    try:
        return text.format(*args)
    except (IndexError, KeyError):
        return text
