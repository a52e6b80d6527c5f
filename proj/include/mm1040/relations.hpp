#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mm1040/money.hpp"
#include "mm1040/rng.hpp"
#include "mm1040/tax_return.hpp"

namespace mm1040 {

enum class Domain { Disability, EITC, CTC, ETC, ID };
const char* to_string(Domain d);

// EQ:       F(x) = F(y)
// GEQ:      F(first) >= F(second); which record is "first" is the relation's
//           compare_swapped flag (false: x, true: y)
// DIFF_GEQ: F(x) - F(y) >= F(x') - F(y'), arity 4
enum class OutputComparator { EQ, GEQ, DIFF_GEQ };
const char* to_string(OutputComparator c);

enum class Label : std::uint8_t { passed = 0, failed = 1 };
const char* to_string(Label l);

// Numeric bounds the samplers draw from. Money bounds are cents but draws
// happen at whole-dollar granularity.
struct SamplingProfile {
  Cents max_agi = dollars(500'000);
  Cents max_withholding = dollars(20'000);
  Cents max_credit = dollars(1'000);
  Cents max_itemized = dollars(100'000);
  Cents max_mde = dollars(20'000);
  int min_age = 18;
  int max_age = 90;
};

// One way of satisfying a relation's premise: how to draw a conforming
// source, how to derive the follow-up, and the predicates that re-check
// both on stored data. Relations with a disjunctive premise carry several.
struct MetamorphoseSpec {
  std::vector<Field> exception_labels;  // fields allowed to differ (the L set)
  std::function<bool(const TaxReturnInput&)> source_ok;
  std::function<bool(const TaxReturnInput&, const TaxReturnInput&)> followup_ok;
  std::function<TaxReturnInput(Rng&, const SamplingProfile&)> draw_source;
  std::function<TaxReturnInput(const TaxReturnInput&, Rng&, const SamplingProfile&)> draw_followup;
};

// Arity-4 relations pair each record with a primed twin that differs only in
// pair_labels (a 2x2 grid: x' from x, y' carries y's exception-label values
// on top of x').
struct PairSpec {
  std::vector<Field> pair_labels;
  std::function<bool(const TaxReturnInput&, const TaxReturnInput&)> pair_ok;  // (x, x')
  std::function<TaxReturnInput(const TaxReturnInput&, Rng&, const SamplingProfile&)> draw_primed;
};

struct MetamorphicRelation {
  int id = 0;
  Domain domain = Domain::Disability;
  int arity = 2;
  OutputComparator comparator = OutputComparator::EQ;
  bool compare_swapped = false;  // GEQ reads F(y) >= F(x)
  std::vector<MetamorphoseSpec> disjuncts;
  std::optional<PairSpec> pair;
  std::string premise_text;
};

// One evaluated tuple. Record order: (x, y) or (x, x', y, y').
struct CaseTuple {
  int relation_id = 0;
  std::vector<TaxReturnInput> records;
  std::vector<Cents> outputs;
  Cents deviance = 0;
  Label label = Label::passed;
  std::int64_t t_seconds = 0;  // whole seconds since the start of the run
};

// The sixteen relations, ids 1..16.
const std::vector<MetamorphicRelation>& catalog();
const MetamorphicRelation& relation_by_id(int id);

// True iff every field outside `labels` is identical between a and b.
bool equal_outside(const TaxReturnInput& a, const TaxReturnInput& b,
                   const std::vector<Field>& labels);

// Mechanical premise re-check for stored tuples.
bool premise_holds(const MetamorphicRelation& rel,
                   const std::vector<TaxReturnInput>& records);

// Nonnegative violation magnitude in cents; 0 means the comparator holds.
Cents deviance(const MetamorphicRelation& rel, const std::vector<Cents>& outputs);

// Plain-text relation listing (id, domain, arity, comparator, premise).
std::string catalog_listing();

}  // namespace mm1040
