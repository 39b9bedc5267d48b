// Batch front end: every verb reads JSON, writes a JSON report and maps the
// outcome to an exit status (0 ok, 1 bad input, 2 property violated, 3 budget).

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "clonelab.hpp"
#include "clonelab/acceptance.hpp"

using namespace clonelab;

namespace
{

enum exit_code : int
{
  ok = 0,
  bad_input = 1,
  violated = 2,
  exhausted = 3
};

struct outcome
{
  bool passed = true;
  json result = json::object();
  std::string summary;
};

struct common_flags
{
  std::string out;
  std::uint64_t max_tables = 10'000'000;
  std::size_t max_arity = 3;
  std::uint64_t seed = 1;

  budget limits() const { return { max_tables, max_arity }; }
};

std::vector<std::size_t> parse_list( const std::string& s )
{
  std::vector<std::size_t> out;
  std::stringstream ss( s );
  std::string item;
  while ( std::getline( ss, item, ',' ) )
  {
    if ( item.empty() )
    {
      continue;
    }
    try
    {
      std::size_t pos = 0;
      out.push_back( std::stoul( item, &pos ) );
      if ( pos != item.size() )
      {
        throw std::invalid_argument( item );
      }
    }
    catch ( const std::logic_error& )
    {
      throw format_error( "not a list of non-negative integers: \"" + s + "\"" );
    }
  }
  return out;
}

std::vector<value_t> to_values( const std::vector<std::size_t>& xs, const carrier& c )
{
  std::vector<value_t> out;
  for ( auto x : xs )
  {
    if ( x >= c.size() )
    {
      throw argument_error( "element " + std::to_string( x ) + " is outside the carrier of size " + std::to_string( c.size() ) );
    }
    out.push_back( static_cast<value_t>( x ) );
  }
  return out;
}

outcome from_report( const check_report& r )
{
  outcome o;
  o.passed = r.passed();
  o.result = r.to_json();
  o.summary = r.name + ": " + ( r.passed() ? "passed" : "FAILED" ) + " (" + std::to_string( r.checks ) + " checks, " +
              std::to_string( r.failures ) + " failures" + ( r.exhaustive ? ", exhaustive" : ", sampled" ) + ")";
  return o;
}

finite_group builtin_group( const std::string& name )
{
  if ( name == "S3" )
  {
    return symmetric_group( 3 );
  }
  if ( name == "Z2xZ2" )
  {
    return direct_product( cyclic_group( 2 ), cyclic_group( 2 ) );
  }
  if ( name.size() > 1 && name[0] == 'Z' && name.find( 'x' ) == std::string::npos )
  {
    return cyclic_group( parse_list( name.substr( 1 ) ).at( 0 ) );
  }
  throw argument_error( "unknown built-in group " + name + " (use Zn, Z2xZ2 or S3)" );
}

finite_group load_group( const std::string& file, const std::string& builtin )
{
  if ( !file.empty() )
  {
    return group_from_json( load_json_file( file ), file );
  }
  return builtin_group( builtin );
}

std::vector<value_t> load_F( const std::string& path, const carrier& X )
{
  return values_from_json( X, load_json_file( path ), path );
}

json parameters_of( const CLI::App& sub )
{
  json params = json::object();
  for ( const auto* opt : sub.get_options() )
  {
    const auto name = opt->get_name();
    if ( name == "--help" || name == "-h" || name == "--out" || name == "-o" )
    {
      continue;
    }
    const auto key = name.substr( name.find_first_not_of( '-' ) );
    if ( opt->count() > 0 )
    {
      const auto& res = opt->results();
      params[key] = res.size() == 1 ? json( res.front() ) : json( res );
    }
    else if ( !opt->get_default_str().empty() )
    {
      params[key] = opt->get_default_str();
    }
  }
  return params;
}

std::uint64_t env_budget()
{
  if ( const char* v = std::getenv( "CLONELAB_BUDGET" ) )
  {
    try
    {
      return std::stoull( v );
    }
    catch ( const std::logic_error& )
    {
      std::cerr << "ignoring malformed CLONELAB_BUDGET=" << v << "\n";
    }
  }
  return 10'000'000;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "clonelab: clone lattice computations and bounded certificates" };
  app.set_version_flag( "--version", std::string( clonelab::version ) );
  app.require_subcommand( 1 );

  common_flags common;
  common.max_tables = env_budget();
  std::map<CLI::App*, std::function<outcome()>> handlers;

  auto verb = [&]( const std::string& name, const std::string& help ) {
    auto* sub = app.add_subcommand( name, help );
    sub->add_option( "--out,-o", common.out, "report file (default: standard output)" );
    sub->add_option( "--budget", common.max_tables, "maximum number of tables one routine may enumerate" )
        ->default_str( std::to_string( common.max_tables ) );
    sub->add_option( "--max-arity", common.max_arity, "largest arity materialized by enumeration" )->default_str( "3" );
    return sub;
  };

  // --- galois ---------------------------------------------------------------
  std::string relations_file, operations_file;
  std::size_t arity = 2;
  std::optional<std::size_t> depth, relation_arity;

  {
    auto* s = verb( "pol", "polymorphisms of a relation set up to an arity" );
    s->add_option( "--relations", relations_file, "relation file" )->required();
    s->add_option( "--arity", arity, "arity bound" )->default_str( "2" );
    handlers[s] = [&] {
      const auto rs = relations_from_json( load_json_file( relations_file ), relations_file );
      const auto ps = pol( rs, arity, common.limits() );
      outcome o;
      o.result = operation_set_to_json( ps );
      o.summary = "Pol: " + std::to_string( ps.size() ) + " operations up to arity " + std::to_string( arity );
      for ( std::size_t n = 1; n <= arity; ++n )
      {
        o.summary += "\n  arity " + std::to_string( n ) + ": " + std::to_string( ps.size( n ) );
      }
      return o;
    };
  }
  {
    auto* s = verb( "inv", "invariant relations of an operation set up to an arity" );
    s->add_option( "--operations", operations_file, "operation file" )->required();
    s->add_option( "--arity", arity, "relation arity bound" )->default_str( "2" );
    handlers[s] = [&] {
      const auto fs = operations_from_json( load_json_file( operations_file ), operations_file );
      const auto rs = inv( fs, arity, common.limits() );
      outcome o;
      o.result = relation_set_to_json( rs );
      o.summary = "Inv: " + std::to_string( rs.size() ) + " relations up to arity " + std::to_string( arity );
      return o;
    };
  }
  {
    auto* s = verb( "close", "clone generated by an operation set, up to an arity" );
    s->add_option( "--operations", operations_file, "generator file" )->required();
    s->add_option( "--arity", arity, "arity bound" )->default_str( "2" );
    s->add_option( "--depth", depth, "stop after this many rounds" );
    handlers[s] = [&] {
      const auto fs = operations_from_json( load_json_file( operations_file ), operations_file );
      const auto cl = clone_closure( fs, arity, depth, common.limits() );
      outcome o;
      o.result = operation_set_to_json( cl.ops );
      o.result["saturated"] = cl.saturated;
      o.result["rounds"] = cl.rounds;
      o.result["compositions"] = cl.compositions;
      o.summary = "closure: " + std::to_string( cl.ops.size() ) + " operations, " +
                  ( cl.saturated ? "saturated" : "not saturated" ) + " after " + std::to_string( cl.rounds ) + " rounds";
      return o;
    };
  }
  {
    auto* s = verb( "fixed-point", "compare the generated clone with Pol Inv" );
    s->add_option( "--operations", operations_file, "generator file" )->required();
    s->add_option( "--arity", arity, "operation arity bound" )->default_str( "2" );
    s->add_option( "--relation-arity", relation_arity, "relation arity bound (default |carrier|^arity)" );
    handlers[s] = [&] {
      const auto fs = operations_from_json( load_json_file( operations_file ), operations_file );
      const auto fp = verify_pol_inv_fixed_point( fs, arity, relation_arity, common.limits() );
      outcome o;
      o.passed = fp.status == fixed_point_status::equal;
      o.result = json{ { "status", to_string( fp.status ) },
                       { "arity_bound", fp.arity_bound },
                       { "relation_arity_bound", fp.relation_arity_bound },
                       { "closure_rounds", fp.closure_rounds },
                       { "invariant_relations", fp.invariant_relations },
                       { "closure_size", fp.closure.size() },
                       { "pol_inv_size", fp.pol_inv.size() },
                       { "only_in_closure", operation_set_to_json( fp.only_in_closure )["operations"] },
                       { "only_in_pol_inv", operation_set_to_json( fp.only_in_pol_inv )["operations"] } };
      o.summary = std::string( "fixed point: " ) + to_string( fp.status ) + " (" + std::to_string( fp.closure.size() ) +
                  " vs " + std::to_string( fp.pol_inv.size() ) + " operations)";
      return o;
    };
  }

  // --- partial clones --------------------------------------------------------
  std::size_t domain_bound = 4;
  std::string left_file, right_file, partials_file;
  std::optional<std::size_t> rounds;
  std::optional<std::size_t> closure_arity;
  {
    auto* s = verb( "restrict", "restrictions of a fragment to small finite domains" );
    s->add_option( "--operations", operations_file, "fragment file" )->required();
    s->add_option( "--domain-bound", domain_bound, "largest domain size" )->default_str( "4" );
    s->add_option( "--close", closure_arity, "close the operations up to this arity first" );
    handlers[s] = [&] {
      auto fs = operations_from_json( load_json_file( operations_file ), operations_file );
      if ( closure_arity )
      {
        fs = clone_closure( fs, *closure_arity, std::nullopt, common.limits() ).ops;
      }
      const auto P = sigma_restriction( fs, domain_bound, common.limits() );
      outcome o;
      o.result = partial_clone_to_json( P );
      o.summary = "restriction: " + std::to_string( P.size() ) + " partial operations";
      return o;
    };
  }
  std::optional<std::vector<std::size_t>> domain_values_raw;
  std::string domain_values_str;
  auto partial_opts = [&]( const carrier& c ) {
    partial_closure_options opt;
    opt.arity_bound = closure_arity;
    opt.domain_size_bound = domain_bound;
    opt.rounds = rounds;
    opt.limits = common.limits();
    if ( !domain_values_str.empty() )
    {
      opt.domain_values = to_values( parse_list( domain_values_str ), c );
    }
    return opt;
  };
  {
    auto* s = verb( "pclose", "partial clone generated by partial operations" );
    s->add_option( "--partials", partials_file, "generator file" )->required();
    s->add_option( "--arity", closure_arity, "arity bound (default: largest generator arity)" );
    s->add_option( "--domain-bound", domain_bound, "largest domain of projection restrictions" )->default_str( "4" );
    s->add_option( "--domain-values", domain_values_str, "comma-separated elements allowed in projection domains" );
    s->add_option( "--rounds", rounds, "stop after this many rounds" );
    handlers[s] = [&] {
      const auto [c, gens] = partials_from_json( load_json_file( partials_file ), partials_file );
      const auto P = partial_clone_closure( c, gens, partial_opts( *c ) );
      outcome o;
      o.result = partial_clone_to_json( P );
      o.summary = "partial closure: " + std::to_string( P.size() ) + " members, " +
                  ( P.saturated ? "saturated" : "not saturated" ) + " after " + std::to_string( P.rounds ) + " rounds";
      return o;
    };
  }
  {
    auto* s = verb( "pjoin", "join of the partial clones generated by two files" );
    s->add_option( "--left", left_file, "first generator file" )->required();
    s->add_option( "--right", right_file, "second generator file" )->required();
    s->add_option( "--arity", closure_arity, "arity bound (default: largest member arity)" );
    s->add_option( "--domain-bound", domain_bound, "largest domain of projection restrictions" )->default_str( "4" );
    s->add_option( "--domain-values", domain_values_str, "comma-separated elements allowed in projection domains" );
    handlers[s] = [&] {
      const auto [c, lg] = partials_from_json( load_json_file( left_file ), left_file );
      const auto [d, rg] = partials_from_json( load_json_file( right_file ), right_file );
      if ( !c->same_as( *d ) )
      {
        throw argument_error( "the two files use different carriers" );
      }
      const auto opt = partial_opts( *c );
      const auto P = partial_clone_closure( c, lg, opt );
      const auto Q = partial_clone_closure( c, rg, opt );
      const auto J = partial_join( P, Q, opt );
      outcome o;
      o.result = partial_clone_to_json( J );
      o.result["left_size"] = P.size();
      o.result["right_size"] = Q.size();
      o.summary = "join: " + std::to_string( J.size() ) + " members (" + std::to_string( P.size() ) + " and " +
                  std::to_string( Q.size() ) + " before)";
      return o;
    };
  }
  {
    auto* s = verb( "sigma-check", "restriction map separates and preserves the join of two fragments" );
    s->add_option( "--left", left_file, "first generator file" )->required();
    s->add_option( "--right", right_file, "second generator file" )->required();
    s->add_option( "--arity", arity, "arity bound of the fragments" )->default_str( "2" );
    s->add_option( "--domain-bound", domain_bound, "largest restriction domain" )->default_str( "4" );
    handlers[s] = [&] {
      const auto L = operations_from_json( load_json_file( left_file ), left_file );
      const auto R = operations_from_json( load_json_file( right_file ), right_file );
      const auto C = clone_closure( L, arity, std::nullopt, common.limits() ).ops;
      const auto D = clone_closure( R, arity, std::nullopt, common.limits() ).ops;
      check_report rep;
      rep.name = "sigma-check";
      const auto sc = sigma_restriction( C, domain_bound, common.limits() );
      const auto sd = sigma_restriction( D, domain_bound, common.limits() );
      rep.details["equal_fragments"] = C == D;
      rep.expect( ( C == D ) == ( sc == sd ), "restriction images coincide for different fragments" );
      if ( auto w = find_separation_witness( C, D ) )
      {
        json dom = json::array();
        for ( const auto& t : w->domain )
        {
          dom.push_back( tuple_to_json( *C.domain(), t ) );
        }
        rep.details["witness"] = json{ { "member_of", w->member_in_first ? "left" : "right" },
                                       { "operation", operation_to_json( w->member ) },
                                       { "domain", dom } };
      }
      partial_closure_options opt;
      opt.arity_bound = arity;
      opt.domain_size_bound = domain_bound;
      std::vector<value_t> all( C.domain()->size() );
      std::iota( all.begin(), all.end(), 0 );
      opt.domain_values = all;
      opt.limits = common.limits();
      const auto lhs = sigma_restriction( clone_closure( C.unite( D ), arity, std::nullopt, common.limits() ).ops,
                                          domain_bound, common.limits() );
      const auto rhs = partial_join( sc, sd, opt );
      rep.expect( lhs == rhs, [&] {
        return json{ { "sigma_of_join", lhs.size() }, { "join_of_sigmas", rhs.size() } };
      } );
      rep.details["left_image"] = sc.size();
      rep.details["right_image"] = sd.size();
      rep.details["join_image"] = lhs.size();
      return from_report( rep );
    };
  }

  // --- embeddings -------------------------------------------------------------
  std::size_t carrier_size = 3;
  std::string subset_str = "0,1";
  std::vector<std::string> clone_files;
  {
    auto* s = verb( "interval-check", "interval embedding of clones on a subset A" );
    s->add_option( "--carrier-size", carrier_size, "size of X" )->default_str( "3" );
    s->add_option( "--subset", subset_str, "comma-separated elements of A" )->default_str( "0,1" );
    s->add_option( "--arity", arity, "arity bound" )->default_str( "2" );
    s->add_option( "--clones", clone_files, "generator files on A (closed before use)" );
    s->add_option( "--seed", common.seed, "seed for sampled compositions" )->default_str( "1" );
    handlers[s] = [&] {
      const auto X = carrier::plain( carrier_size );
      const auto subset = to_values( parse_list( subset_str ), *X );
      const auto A = subcarrier( X, subset );
      std::vector<named_fragment> samples{ { "projections", projections_up_to( A, arity ) } };
      operation_set all( A );
      for ( std::size_t n = 1; n <= arity; ++n )
      {
        for_each_operation( A, n, common.limits(), [&]( const operation& f ) { all.insert( f ); } );
      }
      samples.push_back( { "all", all } );
      for ( const auto& f : clone_files )
      {
        auto gens = operations_from_json( load_json_file( f ), f );
        if ( !gens.domain()->same_as( *A ) )
        {
          throw argument_error( f + ": operations must live on A = {" + subset_str + "}" );
        }
        samples.push_back( { f, clone_closure( gens, arity, std::nullopt, common.limits() ).ops } );
      }
      interval_options opt;
      opt.arity_bound = arity;
      opt.seed = common.seed;
      opt.limits = common.limits();
      auto rep = verify_interval_embedding( X, subset, samples, opt );
      for ( std::size_t m = 1; m <= arity; ++m )
      {
        rep.merge( verify_patch_identity( X, subset, m, false, common.limits() ) );
      }
      return from_report( rep );
    };
  }
  std::string group_file, group_name = "Z2xZ2";
  {
    auto* s = verb( "cayley-check", "Cayley clones embed the subgroup lattice" );
    s->add_option( "--group", group_file, "group file" );
    s->add_option( "--builtin", group_name, "Zn, Z2xZ2 or S3" )->default_str( "Z2xZ2" );
    s->add_option( "--seed", common.seed, "seed for sampled pairs" )->default_str( "1" );
    handlers[s] = [&] {
      cayley_options opt;
      opt.seed = common.seed;
      return from_report( verify_cayley_lattice( subgroup_lattice( load_group( group_file, group_name ) ), opt ) );
    };
  }
  std::string domains_file;
  {
    auto* s = verb( "monp-check", "meets of Cayley clones on finite domains, all subgroup pairs" );
    s->add_option( "--group", group_file, "group file" );
    s->add_option( "--builtin", group_name, "Zn, Z2xZ2 or S3" )->default_str( "Z2xZ2" );
    s->add_option( "--domains", domains_file, "JSON list of domains (lists of element names); default all singletons" );
    handlers[s] = [&] {
      const auto g = load_group( group_file, group_name );
      std::vector<element_set> domains;
      if ( domains_file.empty() )
      {
        for ( value_t x = 0; x < g.order(); ++x )
        {
          domains.push_back( { x } );
        }
      }
      else
      {
        const auto j = load_json_file( domains_file );
        if ( !j.is_array() )
        {
          throw format_error( domains_file + ": expected a list of domains" );
        }
        for ( const auto& d : j )
        {
          element_set e;
          for ( const auto& n : d )
          {
            e.push_back( g.index_of( n.is_string() ? n.get<std::string>() : n.dump() ) );
          }
          std::sort( e.begin(), e.end() );
          domains.push_back( e );
        }
      }
      subgroup_lattice L( g );
      check_report rep;
      rep.name = "monp-check";
      for ( const auto& h : L.subgroups() )
      {
        for ( const auto& k : L.subgroups() )
        {
          rep.merge( verify_monp_meet( g, h, k, domains ) );
        }
      }
      rep.details["subgroups"] = L.size();
      rep.details["domains"] = domains.size();
      return from_report( rep );
    };
  }
  std::string subsets_str = "0,1/1,2/0,2";
  std::size_t elem_a = 0, elem_b = 1;
  {
    auto* s = verb( "antichain-check", "meet antichain and join containments for Pol({A_i})" );
    s->add_option( "--carrier-size", carrier_size, "size of X" )->default_str( "3" );
    s->add_option( "--subsets", subsets_str, "subsets separated by '/', elements by ','" )->default_str( "0,1/1,2/0,2" );
    s->add_option( "--a", elem_a, "indicator value inside A_i" )->default_str( "0" );
    s->add_option( "--b", elem_b, "indicator value outside A_i" )->default_str( "1" );
    s->add_option( "--arity", arity, "arity bound" )->default_str( "2" );
    handlers[s] = [&] {
      const auto X = carrier::plain( carrier_size );
      std::vector<std::vector<value_t>> subsets;
      std::stringstream ss( subsets_str );
      std::string part;
      while ( std::getline( ss, part, '/' ) )
      {
        subsets.push_back( to_values( parse_list( part ), *X ) );
      }
      const auto ab = to_values( { elem_a, elem_b }, *X );
      auto rep = verify_meet_antichain( X, subsets, ab[0], ab[1], arity, common.limits() );
      rep.merge( verify_join_containments( X, subsets, std::min<std::size_t>( arity, 1 ), common.limits() ) );
      return from_report( rep );
    };
  }

  // --- bit-string construction ---------------------------------------------
  std::size_t k = 3, samples = 10, g_count = 2, m_count = 2, variables = 1, term_depth = 3;
  std::string alpha_str = "010", beta_str = "111", gamma_str = "110", f_file, h_lengths_str;
  std::optional<std::size_t> k_opt;
  {
    auto* s = verb( "lemma7", "composition identities for seeded (m, f, g) triples" );
    s->add_option( "--k", k, "truncation bound" )->default_str( "3" );
    s->add_option( "--alpha", alpha_str, "window of alpha" )->default_str( "010" );
    s->add_option( "--samples", samples, "number of triples" )->default_str( "10" );
    s->add_option( "--seed", common.seed, "seed" )->default_str( "1" );
    handlers[s] = [&] {
      const auto X = carrier::tripartite( k );
      const alpha_prefix alpha( alpha_str );
      std::mt19937_64 rng( common.seed );
      std::vector<lemma7_triple> triples;
      json sigmas = json::array();
      for ( std::size_t i = 0; i < samples; ++i )
      {
        const auto sigma = random_sigma_map( k, rng );
        sigmas.push_back( sigma_to_json( sigma ) );
        auto f = to_operation( random_g_alpha( alpha, k, rng ), X );
        auto g = to_operation( random_g_alpha( alpha, k, rng ), X );
        triples.push_back( { make_m_sigma( sigma, X ), std::move( f ), std::move( g ) } );
      }
      auto rep = verify_lemma_composition( alpha, triples );
      rep.details["sigmas"] = sigmas;
      return from_report( rep );
    };
  }
  auto interpretation = [&]( const carrier_ptr& X, const alpha_prefix& alpha ) {
    std::mt19937_64 rng( common.seed );
    m_interpretation in{ X, {}, {} };
    for ( std::size_t i = 0; i < g_count; ++i )
    {
      in.g_ops.push_back( to_operation( random_g_alpha( alpha, k, rng ), X ) );
    }
    for ( std::size_t i = 0; i < m_count; ++i )
    {
      in.m_ops.push_back( make_m_sigma( random_sigma_map( k, rng ), X ) );
    }
    return in;
  };
  {
    auto* s = verb( "lemma9", "classify every identified term up to a depth" );
    s->add_option( "--k", k, "truncation bound" )->default_str( "3" );
    s->add_option( "--alpha", alpha_str, "window of alpha" )->default_str( "010" );
    s->add_option( "--depth", term_depth, "term depth" )->default_str( "3" );
    s->add_option( "--g-count", g_count, "number of G_alpha symbols" )->default_str( "2" );
    s->add_option( "--m-count", m_count, "number of m symbols" )->default_str( "2" );
    s->add_option( "--variables", variables, "variables before identification" )->default_str( "1" );
    s->add_option( "--seed", common.seed, "seed" )->default_str( "1" );
    handlers[s] = [&] {
      const alpha_prefix alpha( alpha_str );
      const auto in = interpretation( carrier::tripartite( k ), alpha );
      term_signature sig;
      sig.variables = variables;
      return from_report( verify_identifying_variables( in, alpha, term_depth, sig, common.max_tables ) );
    };
  }
  {
    auto* s = verb( "meet-check", "G-terms separate F from B_beta up to a depth" );
    s->add_option( "--k", k, "truncation bound" )->default_str( "3" );
    s->add_option( "--alpha", alpha_str, "window of alpha" )->default_str( "010" );
    s->add_option( "--beta", beta_str, "window of beta" )->default_str( "111" );
    s->add_option( "--F", f_file, "JSON list of carrier elements" )->required();
    s->add_option( "--depth", term_depth, "term depth" )->default_str( "3" );
    s->add_option( "--g-count", g_count, "number of G_alpha symbols" )->default_str( "2" );
    s->add_option( "--m-count", m_count, "number of m symbols" )->default_str( "2" );
    s->add_option( "--seed", common.seed, "seed" )->default_str( "1" );
    handlers[s] = [&] {
      const alpha_prefix alpha( alpha_str ), beta( beta_str );
      const auto X = carrier::tripartite( k );
      const auto in = interpretation( X, alpha );
      return from_report( verify_meet_fragment( in, alpha, beta, load_F( f_file, *X ), term_depth, {}, common.max_tables ) );
    };
  }
  {
    auto* s = verb( "join-interp", "build f, g, sigma with m(f(x), g(x)) = h(x) on F" );
    s->add_option( "--gamma", gamma_str, "window of gamma (h lives in G_gamma)" )->default_str( "110" );
    s->add_option( "--alpha", alpha_str, "window of alpha" )->default_str( "000" );
    s->add_option( "--beta", beta_str, "window of beta" )->default_str( "111" );
    s->add_option( "--F", f_file, "JSON list of carrier elements" )->required();
    s->add_option( "--k", k_opt, "truncation bound (default: shortest window)" );
    s->add_option( "--h-lengths", h_lengths_str, "prefix length of h(a_i), comma-separated (default a_i -> i+1)" );
    handlers[s] = [&] {
      const alpha_prefix gamma( gamma_str ), alpha( alpha_str ), beta( beta_str );
      const auto kk = k_opt.value_or( std::min( { gamma.length(), alpha.length(), beta.length() } ) );
      const auto X = carrier::tripartite( kk );
      const auto h = h_lengths_str.empty() ? g_alpha_function::canonical( gamma, kk )
                                           : g_alpha_function( gamma, parse_list( h_lengths_str ) );
      return from_report( verify_join( X, h, load_F( f_file, *X ), alpha, beta ) );
    };
  }

  // --- everything -------------------------------------------------------------
  std::string profile_name = "small";
  {
    auto* s = verb( "verify-all", "run the whole acceptance suite" );
    s->add_option( "--profile", profile_name, "small or full" )->default_str( "small" );
    handlers[s] = [&] {
      const auto p = acceptance::parse_profile( profile_name );
      if ( !p )
      {
        throw argument_error( "unknown profile \"" + profile_name + "\" (use small or full)" );
      }
      outcome o;
      json parts = json::array();
      for ( const auto& c : acceptance::criteria() )
      {
        const auto r = c.run( *p );
        o.passed = o.passed && r.passed();
        auto j = r.to_json();
        j["criterion"] = c.id;
        parts.push_back( j );
        o.summary += std::string( r.passed() ? "PASS " : "FAIL " ) + c.id + ": " + c.title + "\n";
      }
      o.result = json{ { "profile", profile_name }, { "criteria", parts } };
      o.summary += o.passed ? "all criteria passed" : "some criteria FAILED";
      return o;
    };
  }

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::ParseError& e )
  {
    const int rc = app.exit( e );
    return rc == 0 ? ok : bad_input;
  }

  CLI::App* chosen = app.get_subcommands().front();
  json report;
  report["tool"] = "clonelab";
  report["version"] = clonelab::version;
  report["verb"] = chosen->get_name();
  report["parameters"] = parameters_of( *chosen );
  int rc = ok;
  try
  {
    auto o = handlers.at( chosen )();
    report["passed"] = o.passed;
    report["result"] = o.result;
    std::cerr << o.summary << "\n";
    rc = o.passed ? ok : violated;
  }
  catch ( const resource_error& e )
  {
    report["passed"] = false;
    report["error"] = json{ { "kind", "budget" }, { "message", e.what() } };
    if ( const auto* pr = dynamic_cast<const partial_result_error<check_report>*>( &e ) )
    {
      report["partial"] = pr->partial().to_json();
    }
    std::cerr << "budget exhausted: " << e.what() << "\n";
    rc = exhausted;
  }
  catch ( const std::invalid_argument& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return bad_input;
  }
  catch ( const std::out_of_range& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return bad_input;
  }

  const auto text = report.dump( 2 ) + "\n";
  if ( common.out.empty() || common.out == "-" )
  {
    std::cout << text;
  }
  else
  {
    std::ofstream out( common.out, std::ios::binary );
    if ( !out )
    {
      std::cerr << "error: cannot write " << common.out << "\n";
      return bad_input;
    }
    out << text;
  }
  return rc;
}
