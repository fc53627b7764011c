#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "loxogen/automaton.hpp"

namespace loxogen {

/// JSON interchange form of an automaton:
///
///   { "alphabet": [names], "states": n, "start": s, "fail": f,
///     "accept": [ids], "transitions": [[from, letter, to], ...],
///     "names": [state names] }
///
/// Transitions not listed go to fail. Letters may be given by name or by
/// index. "names" is optional and omitted on output when every state carries
/// its default (decimal id) name.
nlohmann::json automaton_to_json(const Automaton& aut);
Automaton automaton_from_json(const nlohmann::json& j);

/// Canonical text: fixed key order, one transition per line, transitions
/// sorted by (from, letter). Reading and rewriting reproduces it byte for
/// byte.
std::string write_automaton(const Automaton& aut);
Automaton read_automaton(std::string_view text);

Automaton load_automaton(const std::filesystem::path& path);
void save_automaton(const std::filesystem::path& path, const Automaton& aut);

}  // namespace loxogen
