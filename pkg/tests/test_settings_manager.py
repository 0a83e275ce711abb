import yaml

from utils.settings_manager import DEFAULT_SETTINGS, SettingsManager


def test_missing_file_is_created_with_defaults(tmp_path):
    path = tmp_path / "settings.yaml"
    manager = SettingsManager(str(path))
    assert manager.all() == DEFAULT_SETTINGS
    assert yaml.safe_load(path.read_text()) == DEFAULT_SETTINGS


def test_loaded_values_override_defaults(tmp_path):
    path = tmp_path / "settings.yaml"
    path.write_text("order_policy: first-seen\nthreads: 2\n")
    manager = SettingsManager(str(path))
    assert manager.get("order_policy") == "first-seen"
    assert manager.get("threads") == 2
    assert manager.get("conservation_tolerance") == DEFAULT_SETTINGS["conservation_tolerance"]


def test_corrupt_file_falls_back_to_defaults(tmp_path):
    path = tmp_path / "settings.yaml"
    path.write_text("order_policy: [unclosed\n")
    assert SettingsManager(str(path)).all() == DEFAULT_SETTINGS

    path.write_text("- just\n- a list\n")
    assert SettingsManager(str(path)).all() == DEFAULT_SETTINGS


def test_saved_changes_persist(tmp_path):
    path = tmp_path / "settings.yaml"
    manager = SettingsManager(str(path))
    manager.settings["seed"] = 42
    manager.save()
    assert SettingsManager(str(path)).get("seed") == 42


def test_get_fallbacks(tmp_path):
    manager = SettingsManager(str(tmp_path / "settings.yaml"))
    assert manager.get("no_such_key", "fallback") == "fallback"
    del manager.settings["report_format"]
    assert manager.get("report_format") == "json"


def test_environment_variable_selects_the_file(isolated_settings):
    manager = SettingsManager()
    assert manager.path == str(isolated_settings)
    assert isolated_settings.exists()


def test_unwritable_location_is_not_fatal(tmp_path):
    manager = SettingsManager(str(tmp_path / "missing_dir" / "settings.yaml"))
    assert manager.get("order_policy") == "freq"
