#pragma once

// qualified so ADL does not pick up the library's enum toString overloads
#define DOCTEST_STRINGIFY(...) ::doctest::toString(__VA_ARGS__)
#include <doctest.h>
