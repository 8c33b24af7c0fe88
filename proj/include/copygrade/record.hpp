/* Copyright 2026 The copygrade Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef COPYGRADE_RECORD_HPP_
#define COPYGRADE_RECORD_HPP_

#include <string>

namespace copygrade {

inline constexpr const char* kHumanSourceLabel = "Human Generated";

// One product with one description. `source_label` names who wrote the
// description ("Human Generated", "GPT2", "LLAMA (Sample)", ...).
struct ProductRecord {
  std::string product_name;
  // Pipe-delimited hierarchy, e.g. "Toys & Games | Board Games".
  std::string product_category;
  std::string about_product;
  std::string description;
  std::string source_label;

  friend bool operator==(const ProductRecord&, const ProductRecord&) = default;
};

}  // namespace copygrade

#endif  // COPYGRADE_RECORD_HPP_
