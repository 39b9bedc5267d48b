#include <gtest/gtest.h>

#include <random>
#include <set>

#include "clonelab/acceptance.hpp"
#include "helpers.hpp"

using namespace clonelab;

namespace
{

bit_string bs( const char* s ) { return bit_string( s ); }

m_interpretation interp( const carrier_ptr& X, const alpha_prefix& alpha, std::uint64_t seed, std::size_t g = 2,
                         std::size_t m = 2 )
{
  std::mt19937_64 rng( seed );
  m_interpretation in{ X, {}, {} };
  for ( std::size_t i = 0; i < g; ++i )
  {
    in.g_ops.push_back( to_operation( random_g_alpha( alpha, X->k(), rng ), X ) );
  }
  for ( std::size_t i = 0; i < m; ++i )
  {
    in.m_ops.push_back( make_m_sigma( random_sigma_map( X->k(), rng ), X ) );
  }
  return in;
}

} // namespace

TEST( Perp, Examples )
{
  EXPECT_TRUE( perp( bs( "0" ), bs( "1" ) ) );
  EXPECT_FALSE( perp( bs( "0" ), bs( "01" ) ) );
  EXPECT_FALSE( perp( bs( "" ), bs( "101" ) ) );
  EXPECT_FALSE( perp( bs( "11" ), bs( "11" ) ) );
  EXPECT_TRUE( perp( std::vector<bit_string>{ bs( "00" ), bs( "01" ) }, std::vector<bit_string>{ bs( "1" ) } ) );
}

TEST( BAlpha, Examples )
{
  const alpha_prefix alpha( "0111" );
  EXPECT_EQ( b_alpha( alpha, 2 ), ( std::vector<bit_string>{ bs( "" ), bs( "0" ), bs( "01" ) } ) );
  for ( std::size_t n = 0; n <= 4; ++n )
  {
    EXPECT_EQ( b_alpha( alpha, n ).size(), n + 1 );
  }
  EXPECT_THROW( b_alpha( alpha, 5 ), argument_error );
}

TEST( BAlpha, AlmostDisjoint )
{
  const alpha_prefix alpha( "011010" ), beta( "011101" );
  ASSERT_EQ( divergence_index( alpha, beta ), std::optional<std::size_t>( 3 ) );
  for ( std::size_t n = 3; n <= 6; ++n )
  {
    const auto a = b_alpha( alpha, n );
    const auto b = b_alpha( beta, n );
    std::set<bit_string> common;
    for ( const auto& s : a )
    {
      if ( std::find( b.begin(), b.end(), s ) != b.end() )
      {
        common.insert( s );
      }
    }
    // prefixes of length 0..3, including the empty string
    EXPECT_EQ( common.size(), 4u );
  }
  EXPECT_FALSE( divergence_index( alpha_prefix( "01" ), alpha_prefix( "011" ) ) );
}

TEST( SigmaMap, Invariants )
{
  using key = sigma_map::key_type;
  EXPECT_NO_THROW( sigma_map( { bs( "0" ) }, { bs( "1" ) }, { { key{ bs( "0" ), bs( "1" ) }, bs( "" ) } } ) );
  // C and D comparable
  EXPECT_THROW( sigma_map( { bs( "0" ) }, { bs( "01" ) }, { { key{ bs( "0" ), bs( "01" ) }, bs( "" ) } } ), argument_error );
  // not injective
  EXPECT_THROW( sigma_map( { bs( "0" ) }, { bs( "10" ), bs( "11" ) },
                           { { key{ bs( "0" ), bs( "10" ) }, bs( "1" ) }, { key{ bs( "0" ), bs( "11" ) }, bs( "1" ) } } ),
                argument_error );
  // domain not all of C x D
  EXPECT_THROW( sigma_map( { bs( "0" ) }, { bs( "10" ), bs( "11" ) }, { { key{ bs( "0" ), bs( "10" ) }, bs( "1" ) } } ),
                argument_error );
  // empty string never qualifies
  EXPECT_THROW( sigma_map( { bs( "" ) }, { bs( "1" ) }, { { key{ bs( "" ), bs( "1" ) }, bs( "0" ) } } ), argument_error );
}

TEST( GAlpha, Examples )
{
  const auto X = carrier::tripartite( 3 );
  const alpha_prefix alpha( "010" );
  const auto g = make_g_alpha( alpha, X );
  std::set<value_t> image;
  for ( value_t x = 0; x < X->size(); ++x )
  {
    const auto v = g( { x } );
    if ( X->is_a( x ) )
    {
      image.insert( v );
      EXPECT_EQ( X->bits( v ), alpha.prefix( x + 1 ) );
    }
    else
    {
      EXPECT_EQ( v, X->infinity() );
    }
  }
  EXPECT_EQ( image.size(), 3u );
  EXPECT_TRUE( in_g_alpha( g, alpha ) );
  EXPECT_FALSE( in_g_alpha( g, alpha_prefix( "110" ) ) );
  EXPECT_THROW( make_g_alpha( alpha_prefix( "01" ), X ), argument_error );
  EXPECT_THROW( g_alpha_function( alpha, { 1, 1, 2 } ), argument_error );
}

TEST( MSigma, Cases )
{
  const auto X = carrier::tripartite( 3 );
  using key = sigma_map::key_type;
  const sigma_map sigma( { bs( "0" ) }, { bs( "10" ), bs( "11" ) },
                         { { key{ bs( "0" ), bs( "10" ) }, bs( "111" ) }, { key{ bs( "0" ), bs( "11" ) }, bs( "" ) } } );
  const auto m = make_m_sigma( sigma, X );
  const auto inf = X->infinity();
  for ( value_t x = 0; x < X->size(); ++x )
  {
    EXPECT_EQ( m( { inf, x } ), inf );
    EXPECT_EQ( m( { x, inf } ), inf );
    EXPECT_EQ( m( { x, x } ), x );
  }
  EXPECT_EQ( m( { X->a( 1 ), X->b( bs( "01" ) ) } ), X->b( bs( "01" ) ) );
  EXPECT_EQ( m( { X->b( bs( "0" ) ), X->b( bs( "10" ) ) } ), X->b( bs( "111" ) ) );
  EXPECT_EQ( m( { X->b( bs( "0" ) ), X->b( bs( "11" ) ) } ), X->b( bs( "" ) ) );
  EXPECT_EQ( m( { X->b( bs( "1" ) ), X->b( bs( "0" ) ) } ), X->b( bs( "1" ) ) );
  EXPECT_EQ( m( { X->a( 0 ), X->a( 2 ) } ), X->a( 0 ) );
  EXPECT_EQ( m( { X->b( bs( "0" ) ), X->a( 2 ) } ), X->b( bs( "0" ) ) );
  EXPECT_THROW( make_m_sigma( sigma, carrier::tripartite( 2 ) ), argument_error );
}

TEST( CompositionIdentities, IdentitiesHoldForRandomTriples )
{
  for ( std::size_t k = 1; k <= 4; ++k )
  {
    const auto X = carrier::tripartite( k );
    const alpha_prefix alpha( std::string( "0110" ).substr( 0, k ) );
    std::mt19937_64 rng( 61 + k );
    std::vector<lemma7_triple> triples;
    for ( int i = 0; i < 10; ++i )
    {
      triples.push_back( { make_m_sigma( random_sigma_map( k, rng ), X ), to_operation( random_g_alpha( alpha, k, rng ), X ),
                           to_operation( random_g_alpha( alpha, k, rng ), X ) } );
    }
    const auto r = verify_lemma_composition( alpha, triples );
    EXPECT_TRUE( r.passed() ) << r.to_json().dump();
    EXPECT_EQ( r.checks, 10u * 4u * X->size() );
  }
}

TEST( CompositionIdentities, DetectsABrokenM )
{
  const auto X = carrier::tripartite( 2 );
  const alpha_prefix alpha( "01" );
  const auto f = make_g_alpha( alpha, X );
  // first projection violates m(x, f(x)) = f(x)
  const auto r = verify_lemma_composition( alpha, { { projection( X, 2, 1 ), f, f } } );
  EXPECT_FALSE( r.passed() );
  EXPECT_FALSE( r.witnesses.empty() );
  EXPECT_THROW( verify_lemma_composition( alpha, { { projection( X, 2, 1 ), projection( X, 1, 1 ), f } } ), argument_error );
}

TEST( ClassifyUnary, Examples )
{
  const auto X = carrier::tripartite( 3 );
  const alpha_prefix alpha( "010" );
  const auto in = interp( X, alpha, 5 );
  const auto x = mterm::var( 0 );
  EXPECT_EQ( classify_unary( x, in, alpha ), unary_class::identity );
  EXPECT_EQ( classify_unary( mterm::g( 0, mterm::g( 1, x ) ), in, alpha ), unary_class::infinity );
  EXPECT_EQ( classify_unary( mterm::m( 0, mterm::g( 0, x ), x ), in, alpha ), unary_class::g_alpha );
  EXPECT_EQ( classify_unary( mterm::g( 0, x ), in, alpha ), unary_class::g_alpha );
  EXPECT_EQ( classify_unary( mterm::m( 1, mterm::g( 0, x ), mterm::g( 1, x ) ), in, alpha ), unary_class::g_alpha );
  EXPECT_EQ( mterm::m( 1, mterm::g( 0, x ), mterm::g( 1, x ) ).identified( in ), in.g_ops[0] );
  const auto y = mterm::var( 1 );
  EXPECT_EQ( mterm::g( 0, mterm::m( 0, x, y ) ).identified( in ), in.g_ops[0] );
  EXPECT_EQ( classify_unary( mterm::inf( x ), in, alpha ), unary_class::infinity );
  EXPECT_EQ( classify_unary( constant( X, 1, 0 ), alpha ), unary_class::other );
}

TEST( MTerm, EvaluateAndPrint )
{
  const auto X = carrier::tripartite( 2 );
  const alpha_prefix alpha( "01" );
  const auto in = interp( X, alpha, 9, 1, 1 );
  const auto t = mterm::m( 0, mterm::g( 0, mterm::var( 0 ) ), mterm::var( 1 ) );
  EXPECT_EQ( t.to_string(), "m0(g0(x0),x1)" );
  EXPECT_EQ( t.depth(), 2u );
  EXPECT_TRUE( t.uses_g() );
  const std::vector<value_t> args{ X->a( 0 ), X->a( 1 ) };
  EXPECT_EQ( t.evaluate( in, args ), in.m_ops[0]( { in.g_ops[0]( { X->a( 0 ) } ), X->a( 1 ) } ) );
}

TEST( TermEnumeration, CountsAndOrder )
{
  const auto X = carrier::tripartite( 2 );
  const alpha_prefix alpha( "01" );
  const auto in = interp( X, alpha, 3, 2, 2 );
  std::vector<std::string> seen;
  term_signature sig;
  sig.variables = 2;
  const auto total = enumerate_identified_terms( in, sig, 2, 1'000'000, [&]( const mterm& t, const std::vector<value_t>& table ) {
    seen.push_back( t.to_string() );
    EXPECT_EQ( operation( X, 1, table ), t.identified( in ) );
  } );
  // depth 0: 2, depth 1: 3*2 + 2*4 = 14, depth 2: 3*14 + 2*(16^2 - 2^2) = 546
  EXPECT_EQ( total, 2u + 14u + 546u );
  EXPECT_EQ( seen.size(), total );
  EXPECT_EQ( seen[0], "x0" );
  EXPECT_EQ( seen[2], "g0(x0)" );
  EXPECT_EQ( seen[6], "inf(x0)" );
  EXPECT_EQ( seen[8], "m0(x0,x0)" );
  EXPECT_THROW( enumerate_identified_terms( in, sig, 2, 100, []( const mterm&, const std::vector<value_t>& ) {} ),
                resource_error );
}

TEST( IdentifiedTerms, BoundedCertificate )
{
  const auto X = carrier::tripartite( 3 );
  const alpha_prefix alpha( "010" );
  const auto r = verify_identifying_variables( interp( X, alpha, 13 ), alpha, 3 );
  EXPECT_TRUE( r.passed() ) << r.to_json().dump();
  EXPECT_EQ( r.details["classes"].value( "other", 0 ), 0 );
  EXPECT_THROW( verify_identifying_variables( interp( X, alpha, 13 ), alpha, 0 ), argument_error );
}

TEST( IdentifiedTerms, BudgetCarriesCoverage )
{
  const auto X = carrier::tripartite( 3 );
  const alpha_prefix alpha( "010" );
  term_signature sig;
  sig.variables = 2;
  try
  {
    verify_identifying_variables( interp( X, alpha, 13 ), alpha, 3, sig, 1000 );
    FAIL() << "expected a budget error";
  }
  catch ( const partial_result_error<check_report>& e )
  {
    EXPECT_EQ( e.partial().details["terms_enumerated"].get<std::uint64_t>(), 2u + 14u + 546u );
  }
}

TEST( IdentifiedTerms, RejectsForeignGenerators )
{
  const auto X = carrier::tripartite( 3 );
  const alpha_prefix alpha( "010" );
  auto in = interp( X, alpha, 13 );
  in.g_ops.push_back( make_g_alpha( alpha_prefix( "111" ), X ) );
  EXPECT_THROW( verify_identifying_variables( in, alpha, 2 ), argument_error );
}

TEST( MeetFragment, Certificate )
{
  const auto X = carrier::tripartite( 3 );
  const alpha_prefix alpha( "000" ), beta( "111" );
  EXPECT_EQ( common_prefix_count( alpha, beta, 3 ), 1u );
  const std::vector<value_t> F{ X->a( 0 ), X->a( 2 ) };
  const auto r = verify_meet_fragment( interp( X, alpha, 17 ), alpha, beta, F, 2 );
  EXPECT_TRUE( r.passed() ) << r.to_json().dump();
  EXPECT_GT( r.details["terms_checked"].get<std::uint64_t>(), 0u );
  EXPECT_GT( r.details["terms_without_g"].get<std::uint64_t>(), 0u );
  EXPECT_THROW( verify_meet_fragment( interp( X, alpha, 17 ), alpha, beta, { X->a( 0 ) }, 2 ), argument_error );
  EXPECT_THROW( verify_meet_fragment( interp( X, alpha, 17 ), alpha, alpha_prefix( "000" ), F, 2 ), argument_error );
}

TEST( JoinInterpolation, Examples )
{
  const auto X = carrier::tripartite( 3 );
  const alpha_prefix gamma( "110" ), alpha( "000" ), beta( "111" );
  const auto h = g_alpha_function::canonical( gamma, 3 );

  const std::vector<value_t> only_b{ X->b( bs( "01" ) ), X->infinity() };
  EXPECT_TRUE( verify_join( X, h, only_b, alpha, beta ).passed() );

  const std::vector<value_t> F{ X->a( 0 ), X->a( 2 ) };
  const auto ji = join_interpolate( X, h, F, alpha, beta );
  EXPECT_EQ( ji.sigma.C(), ( std::vector<bit_string>{ bs( "0" ), bs( "00" ) } ) );
  EXPECT_EQ( ji.sigma.D(), ( std::vector<bit_string>{ bs( "1" ), bs( "11" ) } ) );
  EXPECT_EQ( ji.sigma.graph().size(), 4u );
  const auto term = compose( ji.m_op, { ji.f_op, ji.g_op } );
  const auto h_op = to_operation( h, X );
  for ( auto x : F )
  {
    EXPECT_EQ( term( { x } ), h_op( { x } ) );
  }
  const auto mixed = verify_join( X, h, { X->a( 1 ), X->b( bs( "" ) ), X->infinity() }, alpha, beta );
  EXPECT_TRUE( mixed.passed() );
  EXPECT_TRUE( mixed.details["sigma"].contains( "graph" ) );
}

TEST( JoinInterpolation, Preconditions )
{
  const auto X = carrier::tripartite( 3 );
  const alpha_prefix gamma( "110" ), alpha( "000" ), beta( "111" );
  const auto h = g_alpha_function::canonical( gamma, 3 );
  EXPECT_THROW( join_interpolate( X, h, {}, gamma, beta ), argument_error );
  // divergence at 2 leaves room for one pair only
  try
  {
    join_interpolate( X, h, { X->a( 0 ), X->a( 1 ) }, alpha_prefix( "000" ), alpha_prefix( "001" ) );
    FAIL() << "expected an argument error";
  }
  catch ( const argument_error& e )
  {
    EXPECT_NE( std::string( e.what() ).find( ">= 4" ), std::string::npos );
  }
}

TEST( JoinInterpolation, RandomInstances )
{
  const auto r = acceptance::lemma11( acceptance::profile::small, 99 );
  EXPECT_TRUE( r.passed() ) << r.to_json().dump();
  EXPECT_EQ( r.details["instances"].size(), 20u );
}
