#pragma once

// JSON interchange for shapes, corona patches, periodic certificates and
// classification results.  Single objects are one JSON document; streams are
// JSONL, one object per line.  Every document carries a versioned "format"
// field and unknown versions are rejected loudly.

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tessella/classifier.hpp"
#include "tessella/corona.hpp"
#include "tessella/isohedral.hpp"
#include "tessella/polyform.hpp"

namespace tessella {

// malformed input; the message names the offending line and field
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- single documents (compact, deterministic byte output) ----

// {"format":"tessella-shape/1","grid":...,"cells":[[...],...]}
// cells are written with the grid's coordinate arity
std::string write_shape(const Polyform& s);
Polyform read_shape(std::string_view text);

// {"format":"tessella-patch/1","shape":...,"placements":[{"point":i,"t":[a,b],"corona":k},...]}
// corona indices are required on both sides
std::string write_patch(const Patch& p);
Patch read_patch(std::string_view text);

// {"format":"tessella-periodic/1","patch":...,"t1":[a,b],"t2":[c,d],"classes":k}
std::string write_periodic(const PeriodicCertificate& c);
PeriodicCertificate read_periodic(std::string_view text);

// classification result line with embedded certificates, and the batch
// summary document with verdict/value histograms
std::string write_classification(const Classification& c);
std::string write_batch_summary(const BatchSummary& s);

// ---- JSONL streams ----

void write_shape_lines(std::ostream& out, std::span<const Polyform> shapes);
std::vector<Polyform> read_shape_lines(std::istream& in);

// ---- shape references ----

// "hat" | "turtle" | path | path#index — file contents are shape JSONL; a
// multi-shape file needs the #index suffix
Polyform load_shape_ref(const std::string& ref);

}  // namespace tessella
