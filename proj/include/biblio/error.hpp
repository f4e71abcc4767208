// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#pragma once

#include <stdexcept>
#include <string>

namespace biblio {

/// Root of every exception thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad command line or bad call arguments. The CLI maps it to exit code 1.
class usage_error : public error {
public:
    using error::error;
};

/// Bad input data: unreadable files, malformed records, unknown ids.
/// The CLI maps it to exit code 2.
class data_error : public error {
public:
    using error::error;
};

class invalid_name_error : public data_error {
public:
    using data_error::data_error;
};

class unknown_id_error : public data_error {
public:
    using data_error::data_error;
};

class query_error : public data_error {
public:
    using data_error::data_error;
};

/// A query whose every atom vanished during tokenization.
class empty_query_error : public query_error {
public:
    using query_error::query_error;
};

/// Operation called outside its domain (self-similarity, zones < 1, ...).
class invalid_argument_error : public usage_error {
public:
    using usage_error::usage_error;
};

}  // namespace biblio
