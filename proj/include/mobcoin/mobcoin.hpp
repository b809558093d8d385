#pragma once

// Everything at once.

#include <mobcoin/agency.hpp>
#include <mobcoin/choice.hpp>
#include <mobcoin/config.hpp>
#include <mobcoin/flows.hpp>
#include <mobcoin/io.hpp>
#include <mobcoin/ledger.hpp>
#include <mobcoin/market.hpp>
#include <mobcoin/network.hpp>
#include <mobcoin/pricing.hpp>
#include <mobcoin/rng.hpp>
#include <mobcoin/run.hpp>
#include <mobcoin/simulation.hpp>
#include <mobcoin/units.hpp>
#include <mobcoin/voting.hpp>
