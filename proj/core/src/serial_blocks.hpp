#pragma once

#include "cltwe/clt.hpp"
#include "cltwe/exact_cover.hpp"
#include "text_reader.hpp"

namespace cltwe::detail {

// Reads a "CLTPP1" block starting at the reader's cursor.
PublicParams read_public_params(TextReader& in);

// Reads an exact-cover block (header "U L" then L set lines) at the cursor.
ExactCoverInstance read_cover(TextReader& in);

}  // namespace cltwe::detail
