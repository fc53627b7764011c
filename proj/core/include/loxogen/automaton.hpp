#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace loxogen {

using Letter = std::uint16_t;
using State = std::uint32_t;
using Word = std::vector<Letter>;

/// Sorted, duplicate-free list of state ids.
using StateSet = std::vector<State>;

/// Finite alphabet of named letters; a letter is its index.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Letter x) const;
  const std::vector<std::string>& names() const { return names_; }

  std::optional<Letter> find(std::string_view name) const;
  Letter letter(std::string_view name) const;

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Letter> index_;
};

/// Parses a word written with the alphabet's letter names. Whitespace is
/// ignored between letters, names are matched longest-first, and a group
/// `( ... )^n` or a single letter followed by `^n` is repeated n times.
Word parse_word(const Alphabet& alphabet, std::string_view text);

/// Inverse of parse_word for plain words. Letters are concatenated when all
/// names are one character long and separated by spaces otherwise.
std::string format_word(const Alphabet& alphabet, const Word& w);

/// Deterministic recognizer of a normal-form language.
///
/// The transition table is total. The start state has no incoming arrows, the
/// fail state is absorbing, and neither is an accept state; the constructor
/// rejects anything else with InputError.
class Automaton {
 public:
  Automaton(Alphabet alphabet, std::size_t state_count, State start, State fail,
            StateSet accept, std::vector<State> table,
            std::vector<std::string> state_names = {});

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return state_count_; }
  std::size_t letter_count() const { return alphabet_.size(); }
  State start() const { return start_; }
  State fail() const { return fail_; }
  const StateSet& accept_states() const { return accept_; }
  bool is_accept(State s) const { return accepting_[s] != 0; }

  State next(State s, Letter x) const { return table_[s * letter_count() + x]; }

  /// State reached from `from` after reading w. Throws on letters outside
  /// the alphabet.
  State run(State from, const Word& w) const;

  const std::string& state_name(State s) const { return names_[s]; }
  const std::vector<std::string>& state_names() const { return names_; }
  std::optional<State> find_state(std::string_view name) const;

  /// States other than start and fail.
  StateSet interior_states() const;

  bool operator==(const Automaton& other) const;

 private:
  Alphabet alphabet_;
  std::size_t state_count_;
  State start_;
  State fail_;
  StateSet accept_;
  std::vector<char> accepting_;
  std::vector<State> table_;
  std::vector<std::string> names_;
};

/// Incremental construction; every transition not set explicitly goes to
/// the fail state.
class AutomatonBuilder {
 public:
  AutomatonBuilder(Alphabet alphabet, std::size_t state_count, State start,
                   State fail);

  AutomatonBuilder& accept(State s);
  AutomatonBuilder& transition(State from, Letter x, State to);
  AutomatonBuilder& name(State s, std::string n);

  Automaton build() const;

 private:
  Alphabet alphabet_;
  std::size_t state_count_;
  State start_;
  State fail_;
  StateSet accept_;
  std::vector<State> table_;
  std::vector<std::string> names_;
};

/// Aho-Corasick matcher for a finite set of banned factors. Node 0 is the
/// empty prefix; a node is a match once some banned factor is a suffix of
/// the text read so far.
class FactorMatcher {
 public:
  FactorMatcher(std::size_t letter_count, const std::vector<Word>& factors);

  std::size_t node_count() const { return prefixes_.size(); }
  std::size_t next(std::size_t node, Letter x) const {
    return goto_[node * letter_count_ + x];
  }
  bool is_match(std::size_t node) const { return match_[node] != 0; }
  /// The prefix of some banned factor that this node stands for.
  const Word& prefix(std::size_t node) const { return prefixes_[node]; }

 private:
  std::size_t letter_count_;
  std::vector<Word> prefixes_;
  std::vector<std::size_t> goto_;
  std::vector<char> match_;
};

/// Recognizer of all nonempty words containing none of `banned` as a factor.
/// States are the matcher nodes reachable from the empty prefix, named by the
/// prefix they remember; all of them accept.
Automaton factor_avoiding_automaton(const Alphabet& alphabet,
                                    const std::vector<Word>& banned);

/// Product of `aut` with the matcher for `pattern`; a completed match sends
/// the product to its fail state. Only states reachable from start are kept.
Automaton avoidance_product(const Automaton& aut, const Word& pattern);

/// Keeps the states reachable from start (plus fail), renumbering in
/// increasing order of the old ids.
Automaton trim_unreachable(const Automaton& aut);

// ---------------------------------------------------------------------------
// Structural analysis

bool accepts(const Automaton& aut, const Word& w);

/// States visited along w from start; always |w| + 1 entries.
std::vector<State> trace(const Automaton& aut, const Word& w);

/// Interior states reached (by paths of length >= 0, never passing through
/// fail) from every interior state.
StateSet accessible_subautomaton(const Automaton& aut);

/// Smallest l with the restricted count matrix A^l entrywise positive, or
/// nullopt when the restriction is not primitive. Throws on an empty set.
std::optional<unsigned> recurrence_index(const Automaton& aut,
                                         const StateSet& states);

/// True iff w^n is accepted for every n >= 1. Throws on the empty word.
bool is_rigid_word(const Automaton& aut, const Word& w);

struct RigidWitness {
  Word word;
  State end;
};

/// Shortest w whose run from start ends at an accessible accept state E with
/// run(E, w) = E; ties go to the smallest E, then the lexicographically first
/// word.
std::optional<RigidWitness> find_rigid_word(const Automaton& aut);

struct StructureReport {
  StateSet accessible;
  std::optional<unsigned> recurrence;
  double accessible_rate = 0.0;
  double complement_rate = 0.0;
  bool dominated = false;
  std::optional<RigidWitness> witness;

  bool anf_hypothesis() const { return dominated && witness.has_value(); }
};

StructureReport is_dominated(const Automaton& aut);
StructureReport check_anf_hypothesis(const Automaton& aut);

}  // namespace loxogen
