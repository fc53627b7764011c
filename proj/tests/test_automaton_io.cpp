#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "loxogen/automaton_io.hpp"
#include "loxogen/error.hpp"
#include "loxogen/freegroup.hpp"
#include "loxogen/garside.hpp"
#include "loxogen/psl2z.hpp"

namespace loxogen {
namespace {

Automaton random_automaton(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(3, 12), letters(1, 5), coin(0, 2);
  const std::size_t n = static_cast<std::size_t>(size(rng));
  const std::size_t k = static_cast<std::size_t>(letters(rng));
  std::vector<std::string> names;
  for (std::size_t x = 0; x < k; ++x) names.push_back("g" + std::to_string(x));
  AutomatonBuilder b(Alphabet(names), n, 0, 1);
  std::uniform_int_distribution<std::size_t> target(1, n - 1);
  for (State s = 2; s < n; ++s)
    if (coin(rng)) b.accept(s);
  for (State s = 0; s < n; ++s) {
    if (s == 1) continue;
    for (std::size_t x = 0; x < k; ++x)
      if (coin(rng)) b.transition(s, static_cast<Letter>(x), static_cast<State>(target(rng)));
  }
  if (coin(rng) == 0) b.name(2, "odd \"quoted\" name");
  return b.build();
}

TEST(AutomatonIo, BuiltinsRoundTripByteForByte) {
  for (const Automaton& aut :
       {psl2z::build_automaton(), garside::build_automaton(3), garside::build_automaton(4),
        freegroup::build_automaton(2)}) {
    const std::string text = write_automaton(aut);
    const Automaton back = read_automaton(text);
    EXPECT_EQ(back, aut);
    EXPECT_EQ(write_automaton(back), text);
    EXPECT_EQ(automaton_from_json(automaton_to_json(aut)), aut);
  }
}

TEST(AutomatonIo, RandomAutomataRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const Automaton aut = random_automaton(rng);
    const std::string text = write_automaton(aut);
    const Automaton back = read_automaton(text);
    ASSERT_EQ(back, aut);
    ASSERT_EQ(write_automaton(back), text);
  }
}

TEST(AutomatonIo, DefaultNamesAreOmitted) {
  AutomatonBuilder b(Alphabet({"x"}), 3, 0, 1);
  b.accept(2).transition(0, 0, 2);
  const std::string text = write_automaton(b.build());
  EXPECT_EQ(text.find("names"), std::string::npos);
  EXPECT_NE(write_automaton(psl2z::build_automaton()).find("\"names\""), std::string::npos);
}

TEST(AutomatonIo, LettersByIndexOrName) {
  const Automaton a = read_automaton(
      R"({"alphabet": ["x", "y"], "states": 3, "start": 0, "fail": 1, "accept": [2],
          "transitions": [[0, "x", 2], [2, 1, 2]]})");
  EXPECT_EQ(a.next(2, 1), 2u);
  EXPECT_EQ(a.next(0, 0), 2u);
  EXPECT_EQ(a.next(0, 1), 1u);
}

TEST(AutomatonIo, RejectsMalformedInput) {
  const char* bad[] = {
      "not json",
      "[]",
      R"({"states": 3, "start": 0, "fail": 1, "accept": [], "transitions": []})",
      R"({"alphabet": ["x"], "states": 1, "start": 0, "fail": 0, "accept": [], "transitions": []})",
      R"({"alphabet": ["x"], "states": 3, "start": 5, "fail": 1, "accept": [], "transitions": []})",
      R"({"alphabet": ["x"], "states": 3, "start": 0, "fail": 1, "accept": [2], "transitions": [[0, "z", 2]]})",
      R"({"alphabet": ["x"], "states": 3, "start": 0, "fail": 1, "accept": [2], "transitions": [[0, 3, 2]]})",
      R"({"alphabet": ["x"], "states": 3, "start": 0, "fail": 1, "accept": [2], "transitions": [[0, "x"]]})",
      R"({"alphabet": ["x"], "states": 3, "start": 0, "fail": 1, "accept": [2], "transitions": [[0, "x", 2], [0, "x", 1]]})",
      R"({"alphabet": ["x"], "states": 3, "start": 0, "fail": 1, "accept": [2], "transitions": [[2, "x", 0]]})",
      R"({"alphabet": ["x"], "states": 3, "start": 0, "fail": 1, "accept": [2], "transitions": [[1, "x", 2]]})",
      R"({"alphabet": ["x"], "states": 3, "start": 0, "fail": 1, "accept": [0], "transitions": []})",
      R"({"alphabet": ["x"], "states": 3, "start": 0, "fail": 1, "accept": [2], "transitions": [], "names": ["a"]})",
      R"({"alphabet": ["x", "x"], "states": 3, "start": 0, "fail": 1, "accept": [2], "transitions": []})",
      R"({"alphabet": ["x"], "states": -3, "start": 0, "fail": 1, "accept": [2], "transitions": []})",
  };
  for (const char* text : bad) EXPECT_THROW(read_automaton(text), InputError) << text;
}

TEST(AutomatonIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "loxogen_io_test.json";
  const Automaton aut = garside::build_automaton(3);
  save_automaton(path, aut);
  EXPECT_EQ(load_automaton(path), aut);
  std::filesystem::remove(path);
  EXPECT_THROW(load_automaton(path), InputError);
}

}  // namespace
}  // namespace loxogen
