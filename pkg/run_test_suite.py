#!/usr/bin/env python3
"""
run_test_suite.py
Test suite runner for markov-smooth: unit, integration and system phases
"""

import os
import sys
import subprocess
import time
import argparse
from datetime import datetime
from pathlib import Path
from typing import List, Tuple
import logging

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s',
    handlers=[logging.StreamHandler()],
)
logger = logging.getLogger(__name__)


class Colors:
    """ANSI color codes for terminal output"""
    RED = '\033[0;31m'
    GREEN = '\033[0;32m'
    YELLOW = '\033[1;33m'
    BLUE = '\033[0;34m'
    CYAN = '\033[0;36m'
    RESET = '\033[0m'


class TestSuiteConfig:
    """Configuration for the test suite"""
    def __init__(self):
        self.test_environment = os.getenv('TEST_ENVIRONMENT', 'development')
        self.coverage_threshold = int(os.getenv('COVERAGE_THRESHOLD', '80'))
        self.run_slow = os.getenv('RUN_SLOW', '0') == '1'
        self.report_dir = Path('test_reports')
        self.timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')

        self.report_dir.mkdir(exist_ok=True)


class TestSuiteRunner:
    """Runs pytest phases and writes HTML reports to test_reports/"""

    def __init__(self, config: TestSuiteConfig):
        self.config = config
        self.failed_phases: List[str] = []

    def log(self, message: str):
        print(f"{Colors.BLUE}[{datetime.now().strftime('%H:%M:%S')}] {message}{Colors.RESET}")
        logger.info(message)

    def success(self, message: str):
        print(f"{Colors.GREEN}[OK] {message}{Colors.RESET}")

    def warning(self, message: str):
        print(f"{Colors.YELLOW}[WARN] {message}{Colors.RESET}")

    def error(self, message: str):
        print(f"{Colors.RED}[ERROR] {message}{Colors.RESET}")

    def check_prerequisites(self) -> bool:
        self.log("Checking prerequisites...")
        for module in ('pytest', 'numpy', 'scipy', 'pandas', 'joblib'):
            ok, _, _ = self.run_command([sys.executable, '-c', f'import {module}'], timeout=60)
            if not ok:
                self.error(f"{module} is not installed. Run: pip install -r requirements.txt")
                return False
        self.success("dependencies are available")
        return True

    def run_command(self, command: List[str], timeout: int = 300) -> Tuple[bool, str, str]:
        try:
            result = subprocess.run(command, capture_output=True, text=True, timeout=timeout, check=False)
            return result.returncode == 0, result.stdout, result.stderr
        except subprocess.TimeoutExpired:
            self.error(f"Command timed out after {timeout} seconds")
            return False, "", "Timeout"

    def _pytest(self, phase: str, path: str, timeout: int, extra: List[str]) -> bool:
        start_time = time.time()
        phase_report = self.config.report_dir / f"{phase}_tests_{self.config.timestamp}.html"
        command = [
            sys.executable, '-m', 'pytest', path,
            '--verbose',
            '--tb=short',
            f'--html={phase_report}',
            '--self-contained-html',
        ] + extra

        success, stdout, stderr = self.run_command(command, timeout=timeout)
        (self.config.report_dir / f"{phase}_tests_{self.config.timestamp}.log").write_text(
            stdout + stderr, encoding='utf-8'
        )
        if not success:
            self.error(f"{phase} tests failed, see {phase_report}")
            return False
        self.success(f"{phase} tests completed in {int(time.time() - start_time)}s")
        return True

    def run_unit_tests(self) -> bool:
        self.log("PHASE 1: UNIT TESTING")
        return self._pytest('unit', 'tests/unit/', 1800, [
            '--cov=src',
            f'--cov-report=html:{self.config.report_dir}/coverage_unit_{self.config.timestamp}',
            '--cov-report=term-missing',
            f'--cov-fail-under={self.config.coverage_threshold}',
            '--maxfail=5',
        ])

    def run_integration_tests(self) -> bool:
        self.log("PHASE 2: INTEGRATION TESTING (CLI, desk-scale study, determinism)")
        return self._pytest('integration', 'tests/integration/', 3600, [])

    def run_system_tests(self) -> bool:
        self.log("PHASE 3: SYSTEM TESTING (full-scale coverage study)")
        if not self.config.run_slow:
            self.warning("RUN_SLOW is not set, full-scale tests will be skipped")
        return self._pytest('system', 'tests/system/', 6 * 3600, [])

    def run_phase(self, phase: str) -> bool:
        phase_methods = {
            'unit': self.run_unit_tests,
            'integration': self.run_integration_tests,
            'system': self.run_system_tests,
        }
        if phase not in phase_methods:
            self.error(f"Unknown phase: {phase}")
            return False
        return phase_methods[phase]()

    def run_all_phases(self) -> bool:
        start_time = time.time()
        if not self.check_prerequisites():
            return False

        for phase_key in ('unit', 'integration', 'system'):
            if not self.run_phase(phase_key):
                self.failed_phases.append(phase_key)

        print(f"{Colors.CYAN}Total duration: {int(time.time() - start_time)}s, reports: {self.config.report_dir}{Colors.RESET}")
        if self.failed_phases:
            self.error(f"failed phases: {', '.join(self.failed_phases)}")
            return False
        self.success("all phases passed")
        return True


def main():
    parser = argparse.ArgumentParser(description='Test suite runner for markov-smooth')
    parser.add_argument('phase', nargs='?', default='all', choices=['all', 'unit', 'integration', 'system'])
    parser.add_argument('--coverage-threshold', type=int, default=80)
    parser.add_argument('--slow', action='store_true', help='enable full-scale system tests (RUN_SLOW=1)')
    args = parser.parse_args()

    os.environ['COVERAGE_THRESHOLD'] = str(args.coverage_threshold)
    if args.slow:
        os.environ['RUN_SLOW'] = '1'

    runner = TestSuiteRunner(TestSuiteConfig())
    try:
        success = runner.run_all_phases() if args.phase == 'all' else runner.run_phase(args.phase)
    except KeyboardInterrupt:
        print(f"\n{Colors.YELLOW}Test suite interrupted by user{Colors.RESET}")
        success = False
    sys.exit(0 if success else 1)


if __name__ == '__main__':
    main()
